// Amalgam block norms, Fofana norms and their weak-Lorentz variant.
#pragma once

#include "dunkl/transform.hpp"

#include <vector>

namespace dunkl {

// Geometric radius grid {2^{j/2} : j = lo..hi}.
std::vector<double> half_octave_radii(int lo, int hi);
// Default scales for the sup over r > 0: j = -8..8.
std::vector<double> default_fofana_radii();

struct NormSpec {
    double q = 1.0;
    double p = 1.0;
    double alpha = 1.0;
    std::vector<double> r_grid = default_fofana_radii();
    int stride = 4;  // y subsampling for weak block norms
};

// Exponents of the fractional statements:
//   1/alpha* = 1/alpha - beta/(2k+2),  1/pbar = (1/p)(1 - alpha beta/(2k+2)),
//   1/qbar = (1/q)(1 - alpha beta/(2k+2)).
struct DerivedExponents {
    double alpha_star;
    double pbar;
    double qbar;
};
DerivedExponents derive_exponents(const DunklParameter& param, double q, double p, double alpha, double beta);

struct NormResult {
    double value = 0.0;
    double argmax_r = 0.0;
};

// r||f||_{q,p}: ||(|f|^q *_k chi_{B_r})^{1/q}||_p for q < inf, and for q = inf
// the L^p norm of y -> max |f| over grid nodes of the ball B(y, r).
double block_norm_continuous(const GridFunction& f, double q, double p, double r, const TransformPlan& plan);
// One column per radius of (|f|^q *_k chi_{B_r}), clamped at 0. q < inf.
Eigen::MatrixXd block_profiles(const GridFunction& f, double q, std::span<const double> rs, const TransformPlan& plan);

// (sum_l mu(Q_l^r) ||f chi_{Q_l^r}||_q^p)^{1/p}, Q_l^r = [rl, rl + r).
double block_norm_discrete(const GridFunction& f, double q, double p, double r);

// max over r_grid of mu(B_r)^{1/alpha - 1/q - 1/p} r||f||_{q,p}.
NormResult fofana_norm(const GridFunction& f, const NormSpec& spec, const TransformPlan& plan);
NormResult fofana_norm_discrete(const GridFunction& f, const NormSpec& spec);

// || y -> || f (tau_{-y} chi_{B_r})^{1/qbar} ||_{L^{qbar,inf}} ||_{pbar} over the
// y subgrid given by `stride`. qbar = 1 is admitted (weak L^1).
double weak_block_norm(const GridFunction& f, double qbar, double pbar, double r, const TransformPlan& plan,
                       int stride = 4);
// max over r_grid of mu(B_r)^{1/alpha - 1/qbar - 1/pbar} times the weak block norm,
// with (q, p, alpha) of the spec read as (qbar, pbar, alpha*).
NormResult weak_fofana_norm(const GridFunction& f, const NormSpec& spec, const TransformPlan& plan);

// Local comparability of the translated block integral with the plain one on
// the interval I(y, 1): the range of
//   [int tau_y |f|^q chi_{B_1} dmu] / [int_{I(y,1)} |f|^q dmu]
// over grid nodes |y| <= y_max where the denominator is at least `floor`.
struct ComparabilityRange {
    double lower = 0.0;
    double upper = 0.0;
    double argmin_y = 0.0;
    double argmax_y = 0.0;
    std::size_t samples = 0;
};
ComparabilityRange local_comparability(const GridFunction& f, double q, double y_max, const TransformPlan& plan,
                                       int stride = 8, double floor = 1e-8);

void check_fofana_order(double q, double p, double alpha);

} // namespace dunkl
