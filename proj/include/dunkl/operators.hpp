// Maximal operators, the fractional integral and the near/far split of the
// fractional integral.
#pragma once

#include "dunkl/transform.hpp"

#include <span>
#include <vector>

namespace dunkl {

// {2^{j/2} : j = -10..6}.
std::vector<double> default_maximal_radii();
// 129 equispaced nodes on [-6, 6] (0 included).
std::vector<double> default_eval_nodes();

// Full-grid versions built from spectral ball averages.
GridFunction hl_maximal(const GridFunction& f, std::span<const double> r_grid, const TransformPlan& plan);
GridFunction fractional_maximal(const GridFunction& f, double beta, std::span<const double> r_grid,
                                const TransformPlan& plan);
// Full-grid I_beta f through the multiplier R(l) = 2 sum_j K_j j_k(l z_j),
// K_j the exact cell masses of |z|^{beta-2k-2} dmu.
GridFunction riesz_potential_grid(const GridFunction& f, double beta, const TransformPlan& plan);

// Kernel mass of |z|^{beta-2k-2} dmu(z) over 0 <= a < |z| < b, one side.
double riesz_kernel_mass(const DunklParameter& param, double beta, double a, double b);
void check_beta(const DunklParameter& param, double beta);

// I_beta f at arbitrary nodes: synthesize tau_x f and sum against the kernel
// cell masses. Complex input is handled part by part.
std::vector<cplx> riesz_potential(const GridFunction& f, double beta, std::span<const double> eval_nodes,
                                  const TransformPlan& plan);

struct HedbergSplit {
    double near = 0.0;  // integral over B(0, r)
    double far = 0.0;   // integral over the complement
};

// Pointwise evaluation at a fixed node set from the samples tau_x g on the full
// grid, g = |f| (or f for signed data). For nonnegative g the samples are
// replaced by their positive part, as the translation of a nonnegative
// function is nonnegative.
class PointEvaluator {
public:
    PointEvaluator(const GridFunction& g, std::span<const double> xs, const TransformPlan& plan);

    std::size_t count() const noexcept { return xs_.size(); }
    double node(std::size_t c) const noexcept { return xs_[c]; }
    const Eigen::MatrixXd& samples() const noexcept { return tau_; }

    double ball_integral(std::size_t c, double r) const;
    double average(std::size_t c, double r) const;
    double maximal(std::size_t c, std::span<const double> radii) const;
    double fractional_maximal(std::size_t c, double beta, std::span<const double> radii) const;
    double riesz(std::size_t c, double beta) const;
    HedbergSplit hedberg(std::size_t c, double r, double beta) const;

private:
    const TransformPlan& plan_;
    std::vector<double> xs_;
    Eigen::MatrixXd tau_;
};

std::vector<double> hl_maximal_at(const GridFunction& f, std::span<const double> r_grid,
                                  std::span<const double> xs, const TransformPlan& plan);
std::vector<double> fractional_maximal_at(const GridFunction& f, double beta, std::span<const double> r_grid,
                                          std::span<const double> xs, const TransformPlan& plan);
HedbergSplit hedberg_split(const GridFunction& f, double x, double r, double beta, const TransformPlan& plan);

// Constants of the near/far chains:
//   |A| <= d_k 2^{2k+2-beta} (1-2^{-beta})^{-1} r^beta Mf(x),
//   |B| <= d_k^{1-1/a} 2^{(2k+2)(1-1/a)} (1-2^{beta-(2k+2)/a})^{-1} r^{beta-(2k+2)/a} ||f||_{q,inf,a}.
double hedberg_near_constant(const DunklParameter& param, double beta);
double hedberg_far_constant(const DunklParameter& param, double beta, double alpha);
// Radii used for Mf in the near bound: the given grid plus 2^{-i} r down to
// below the innermost cell.
std::vector<double> hedberg_near_radii(const QuadratureGrid& grid, double r, std::span<const double> r_grid);

} // namespace dunkl
