// Gamma, normalized Bessel functions and the Dunkl kernel on the imaginary axis.
#pragma once

#include <complex>

namespace dunkl {

// Lanczos approximation, g = 7, nine coefficients.
double gamma_fn(double x);

// Deformation parameter together with the measure constants
//   c_k = 1 / (2^{k+1} Gamma(k+1)),  d_k = c_k / (k+1),
// so that mu(B_r) = d_k r^{2k+2}.
class DunklParameter {
public:
    explicit DunklParameter(double k);

    double k() const noexcept { return k_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    // Homogeneous dimension 2k+2.
    double dim() const noexcept { return 2.0 * k_ + 2.0; }

    bool operator==(const DunklParameter& o) const noexcept { return k_ == o.k_; }

private:
    double k_;
    double c_;
    double d_;
};

// j_nu(z) = Gamma(nu+1) (2/z)^nu J_nu(z), with j_nu(0) = 1. Even in z.
double normalized_bessel_j(double nu, double z);

// The two evaluation paths, exposed so their overlap can be tested.
namespace detail {
double bessel_series(double nu, double z);
double bessel_asymptotic(double nu, double z);
inline constexpr double kBesselCrossover = 15.0;
} // namespace detail

// E_k(it) = j_k(t) + i t/(2k+2) j_{k+1}(t).
std::complex<double> dunkl_kernel_imag(const DunklParameter& param, double t);

} // namespace dunkl
