#include "dunkl/special_functions.hpp"

#include "dunkl/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace dunkl {

namespace {

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
    constexpr double pi = std::numbers::pi;
    if (x < 0.5) return pi / (std::sin(pi * x) * lanczos_gamma(1.0 - x));
    x -= 1.0;
    double a = kLanczos[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return std::sqrt(2.0 * pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

void check_order(double nu) {
    if (!(nu > -1.0) || !std::isfinite(nu))
        throw DomainError("Bessel order must exceed -1, got " + std::to_string(nu));
}

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("gamma_fn needs a positive finite argument, got " + std::to_string(x));
    // Integers are exact factorials; the product is exact in double up to 22!.
    if (x == std::floor(x) && x <= 23.0) {
        double f = 1.0;
        for (int i = 2; i < static_cast<int>(x); ++i) f *= i;
        return f;
    }
    return lanczos_gamma(x);
}

DunklParameter::DunklParameter(double k) : k_(k) {
    // The classical endpoint k = -1/2 is admitted: it is the reference case
    // against which the deformed calculus is validated.
    if (!(k >= -0.5) || !std::isfinite(k))
        throw DomainError("Dunkl parameter must satisfy k >= -1/2, got " + std::to_string(k));
    c_ = 1.0 / (std::pow(2.0, k + 1.0) * gamma_fn(k + 1.0));
    d_ = c_ / (k + 1.0);
}

namespace detail {

double bessel_series(double nu, double z) {
    // Extended precision: near the crossover the alternating terms peak
    // about 1e7 above the result, which costs double arithmetic ~1e-9.
    using ld = long double;
    const ld q = -0.25L * static_cast<ld>(z) * static_cast<ld>(z);
    const ld v = nu;
    // Kahan-compensated partial sums of term_n = term_{n-1} q / (n (n+nu)).
    ld sum = 1.0L, comp = 0.0L, term = 1.0L;
    for (int n = 1; n < 500; ++n) {
        term *= q / (static_cast<ld>(n) * (static_cast<ld>(n) + v));
        const ld y = term - comp;
        const ld t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const bool past_peak = static_cast<ld>(n) * (static_cast<ld>(n) + v) > -q;
        if (past_peak && std::abs(term) < 1e-21L * std::abs(sum)) break;
        if (past_peak && term == 0.0L) break;
    }
    return static_cast<double>(sum);
}

double bessel_asymptotic(double nu, double z) {
    constexpr double pi = std::numbers::pi;
    z = std::abs(z);
    const double mu = 4.0 * nu * nu;
    // t_k = a_k(nu) / z^k with a_k = prod_{i<=k} (mu - (2i-1)^2) / (k! 8^k).
    double p = 1.0, q = 0.0, t = 1.0, prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        t *= (mu - odd * odd) / (8.0 * k * z);
        const double mag = std::abs(t);
        if (mag > prev) break;  // asymptotic series started to diverge
        // Signs: P = t0 - t2 + t4 ..., Q = t1 - t3 + ...
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) p += sign * t; else q += sign * t;
        if (mag < 1e-17) break;
        prev = mag;
    }
    const double chi = z - (0.5 * nu + 0.25) * pi;
    const double bessel_j = std::sqrt(2.0 / (pi * z)) * (p * std::cos(chi) - q * std::sin(chi));
    return gamma_fn(nu + 1.0) * std::pow(2.0 / z, nu) * bessel_j;
}

} // namespace detail

double normalized_bessel_j(double nu, double z) {
    check_order(nu);
    if (!std::isfinite(z)) throw DomainError("normalized_bessel_j: non-finite argument");
    z = std::abs(z);
    if (z == 0.0) return 1.0;
    return z <= detail::kBesselCrossover ? detail::bessel_series(nu, z)
                                         : detail::bessel_asymptotic(nu, z);
}

std::complex<double> dunkl_kernel_imag(const DunklParameter& param, double t) {
    if (!std::isfinite(t)) throw DomainError("dunkl_kernel_imag: non-finite argument");
    if (t == 0.0) return {1.0, 0.0};
    const double k = param.k();
    return {normalized_bessel_j(k, t), t / (2.0 * k + 2.0) * normalized_bessel_j(k + 1.0, t)};
}

} // namespace dunkl
