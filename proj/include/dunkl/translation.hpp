// Generalized translation, convolution and ball averages as spectral
// multipliers.
#pragma once

#include "dunkl/transform.hpp"

#include <functional>
#include <span>

namespace dunkl {

// Multiplies F by m(l) and synthesizes with the spectral filter.
GridFunction apply_multiplier(const SpectralFunction& F, const std::function<cplx(double)>& m,
                              const TransformPlan& plan);

// tau_y f. tau_0 is the identity. Real input gives real output; for
// nonnegative input, undershoot above -1e-6 ||f||_inf is clamped to 0 and
// anything deeper is kept and reported as a warning.
GridFunction translate(const GridFunction& f, double y, const TransformPlan& plan);

// tau_x f evaluated at one point y (single spectral sum, no grid synthesis).
cplx translate_at(const GridFunction& f, double x, double y, const TransformPlan& plan);
cplx translate_at(const SpectralFunction& F, double x, double y, const TransformPlan& plan);

// Columns tau_{x_c} f on the full grid for real f, as a (2N x n) matrix in
// storage order. Columns with x_c = 0 are f itself.
Eigen::MatrixXd translate_columns(const GridFunction& f, std::span<const double> xs, const TransformPlan& plan);

GridFunction convolve(const GridFunction& f, const GridFunction& g, const TransformPlan& plan);

// x -> mu(B_r)^{-1} (|f| *_k chi_{B_r})(x) with the closed-form indicator multiplier.
GridFunction ball_average(const GridFunction& f, double r, const TransformPlan& plan);
// The same for several radii, unclamped; column i belongs to rs[i].
Eigen::MatrixXd ball_average_columns(const GridFunction& f, std::span<const double> rs, const TransformPlan& plan);

// Integral of column-sampled tau_x values over B_r, counting partial cells by
// their exact overlap mass.
double ball_integral(const QuadratureGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& tau, double r);

struct PointwiseBoundReport {
    double x = 0.0;
    double r = 0.0;             // snapped radius actually used
    double tolerance = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
    double mass_outside = 0.0;  // mass of |tau_x chi_{B_r}| outside B(x, r)
    double mu_ball = 0.0;
    bool lower_ok = false;
    bool upper_ok = false;
    bool support_ok = false;
    bool pass() const { return lower_ok && upper_ok && support_ok; }
};

PointwiseBoundReport translate_pointwise_bound_check(const TransformPlan& plan, double r, double x,
                                                     std::span<const double> y_samples, double tol = 1e-4);

// True when the tail of f beyond X - |y| carries more than 1e-8 of ||f||_1.
bool translation_tail_warning(const GridFunction& f, double y);

} // namespace dunkl
