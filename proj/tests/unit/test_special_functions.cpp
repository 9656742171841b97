// Oracles: the half-integer closed forms, libstdc++'s std::cyl_bessel_j and
// std::tgamma, and frozen reference values of J_0, J_1.
#include "dunkl/errors.hpp"
#include "dunkl/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dunkl;

namespace {

double oracle_j(double nu, double z) {
    if (z == 0.0) return 1.0;
    const double a = std::abs(z);
    return std::tgamma(nu + 1.0) * std::pow(2.0 / a, nu) * std::cyl_bessel_j(nu, a);
}

} // namespace

TEST_CASE("gamma_fn: exact values and tgamma agreement") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    for (double x = 0.05; x < 30.0; x *= 1.37) CHECK(std::abs(gamma_fn(x) / std::tgamma(x) - 1.0) < 1e-13);
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("DunklParameter constants") {
    const DunklParameter p0(0.0);
    CHECK(p0.c() == doctest::Approx(0.5));
    CHECK(p0.d() == doctest::Approx(0.5));
    const DunklParameter ph(-0.5);
    CHECK(ph.d() == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-14));
    for (double k : {-0.25, 0.5, 1.5, 3.0}) {
        const DunklParameter p(k);
        CHECK(p.c() / p.d() == doctest::Approx(k + 1.0).epsilon(1e-14));
        CHECK(p.c() == doctest::Approx(1.0 / (std::pow(2.0, k + 1.0) * std::tgamma(k + 1.0))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(DunklParameter(-0.6), DomainError);
}

TEST_CASE("normalized_bessel_j: spec examples") {
    for (double nu : {-0.5, 0.0, 0.7, 2.0}) CHECK(normalized_bessel_j(nu, 0.0) == 1.0);
    CHECK(normalized_bessel_j(-0.5, std::numbers::pi / 3.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(normalized_bessel_j(0.5, std::numbers::pi)) < 1e-15);
    CHECK(std::abs(normalized_bessel_j(0.0, 2.404825557695773)) < 1e-14);
    CHECK_THROWS_AS(normalized_bessel_j(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(normalized_bessel_j(0.0, INFINITY), DomainError);
    CHECK_THROWS_AS(normalized_bessel_j(0.0, NAN), DomainError);
}

TEST_CASE("normalized_bessel_j: half-integer closed forms on |z| <= 400") {
    double worst = 0.0;
    for (double z = -400.0; z <= 400.0; z += 0.0731) {
        worst = std::max(worst, std::abs(normalized_bessel_j(-0.5, z) - std::cos(z)));
        const double sinc = z == 0.0 ? 1.0 : std::sin(z) / z;
        worst = std::max(worst, std::abs(normalized_bessel_j(0.5, z) - sinc));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("normalized_bessel_j: std::cyl_bessel_j oracle") {
    // libstdc++ rejects negative orders.
    for (double nu : {0.0, 0.5, 1.5, 3.0})
        for (double z = 0.01; z < 500.0; z *= 1.21) {
            const double ref = oracle_j(nu, z);
            // Absolute scale: j_nu decays like z^{-nu-1/2}; compare relative to the envelope.
            const double env = std::max(std::abs(ref), std::tgamma(nu + 1.0) * std::pow(2.0 / z, nu) / std::sqrt(z));
            CHECK_MESSAGE(std::abs(normalized_bessel_j(nu, z) - ref) <= 1e-9 * env, "nu=" << nu << " z=" << z);
        }
}

TEST_CASE("normalized_bessel_j: evenness is exact") {
    for (double nu : {-0.3, 0.0, 1.25})
        for (double z : {0.1, 3.0, 14.9, 15.1, 77.7, 499.0}) CHECK(normalized_bessel_j(nu, z) == normalized_bessel_j(nu, -z));
}

TEST_CASE("series and asymptotic paths agree across the crossover") {
    double worst = 0.0;
    for (double nu : {-0.4, 0.0, 0.5, 1.5, 3.0})
        for (double z = 12.0; z <= 18.0; z += 0.01) {
            const double s = detail::bessel_series(nu, z);
            const double a = detail::bessel_asymptotic(nu, z);
            // Relative to the local envelope so that zeros do not blow up the ratio.
            const double env = std::tgamma(nu + 1.0) * std::pow(2.0 / z, nu) * std::sqrt(2.0 / (std::numbers::pi * z));
            worst = std::max(worst, std::abs(s - a) / env);
        }
    CHECK(worst <= 1e-9);
}

TEST_CASE("derivative identity d/dz[z^{2k+2} j_{k+1}] = (2k+2) z^{2k+1} j_k") {
    const double h = 1e-3;
    for (double k : {-0.5, 0.0, 0.5, 1.5})
        for (double z : {0.3, 1.0, 4.0, 14.0, 16.0, 40.0}) {
            auto F = [&](double t) { return std::pow(t, 2 * k + 2) * normalized_bessel_j(k + 1, t); };
            const double fd = (F(z + h) - F(z - h)) / (2 * h);
            const double exact = (2 * k + 2) * std::pow(z, 2 * k + 1) * normalized_bessel_j(k, z);
            const double scale = std::pow(z, 2 * k + 2);
            CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, scale));
        }
}

TEST_CASE("dunkl_kernel_imag") {
    const DunklParameter ph(-0.5);
    for (double t : {-3.0, -0.5, 0.0, 1.0, 250.0}) {
        const auto e = dunkl_kernel_imag(ph, t);
        CHECK(e.real() == doctest::Approx(std::cos(t)).epsilon(1e-12));
        CHECK(e.imag() == doctest::Approx(std::sin(t)).epsilon(1e-12));
    }
    for (double k : {-0.25, 0.0, 1.5}) {
        const auto one = dunkl_kernel_imag(DunklParameter(k), 0.0);
        CHECK(one.real() == 1.0);
        CHECK(one.imag() == 0.0);
    }
    const auto e = dunkl_kernel_imag(DunklParameter(0.0), 1.0);
    CHECK(e.real() == doctest::Approx(0.7651976865579666).epsilon(1e-12));
    CHECK(e.imag() == doctest::Approx(0.4400505857449335).epsilon(1e-12));
    CHECK_THROWS_AS(dunkl_kernel_imag(DunklParameter(0.0), NAN), DomainError);
}

TEST_CASE("|E_k(it)| <= 1 on [-500, 500]") {
    for (double k : {-0.5, -0.25, 0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        double worst = 0.0;
        for (double t = -500.0; t <= 500.0; t += 0.0173) worst = std::max(worst, std::abs(dunkl_kernel_imag(p, t)));
        CHECK(worst <= 1.0 + 1e-9);
    }
}
