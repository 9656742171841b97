#include "dunkl/operators.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/translation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace dunkl {

std::vector<double> default_maximal_radii() {
    std::vector<double> r;
    for (int j = -10; j <= 6; ++j) r.push_back(std::pow(2.0, 0.5 * j));
    return r;
}

std::vector<double> default_eval_nodes() {
    std::vector<double> x(129);
    for (int i = 0; i < 129; ++i) x[static_cast<std::size_t>(i)] = -6.0 + 12.0 * i / 128.0;
    return x;
}

void check_beta(const DunklParameter& param, double beta) {
    if (!(beta > 0.0) || !(beta < param.dim()))
        throw DomainError(fmt::format("beta must lie in (0, 2k+2) = (0, {}), got {}", param.dim(), beta));
}

double riesz_kernel_mass(const DunklParameter& param, double beta, double a, double b) {
    if (!(b > a)) return 0.0;
    return param.c() * (std::pow(b, beta) - std::pow(a, beta)) / beta;
}

namespace {

void check_radii(std::span<const double> r_grid) {
    if (r_grid.empty()) throw ConfigError("maximal operator needs a nonempty radius grid");
    for (double r : r_grid)
        if (!(r > 0.0)) throw DomainError(fmt::format("radius grid entries must be positive, got {}", r));
}

bool nonnegative_real(const GridFunction& f) {
    return std::all_of(f.values().begin(), f.values().end(),
                       [](const cplx& v) { return v.imag() == 0.0 && v.real() >= 0.0; });
}

GridFunction max_over_columns(const GridFunction& f, const Eigen::MatrixXd& cols, const std::vector<double>& scale) {
    std::vector<double> out(static_cast<std::size_t>(cols.rows()), 0.0);
    for (Eigen::Index i = 0; i < cols.rows(); ++i) {
        double m = 0.0;
        for (Eigen::Index c = 0; c < cols.cols(); ++c)
            m = std::max(m, scale[static_cast<std::size_t>(c)] * cols(i, c));
        out[static_cast<std::size_t>(i)] = m;
    }
    return GridFunction(f.grid_ptr(), out, Sampling::point);
}

std::vector<double> half_kernel_masses(const QuadratureGrid& g, double beta) {
    const auto b = g.boundaries();
    std::vector<double> K(static_cast<std::size_t>(g.half_size()));
    for (std::size_t j = 0; j < K.size(); ++j) K[j] = riesz_kernel_mass(g.param(), beta, b[j], b[j + 1]);
    return K;
}

} // namespace

GridFunction hl_maximal(const GridFunction& f, std::span<const double> r_grid, const TransformPlan& plan) {
    check_radii(r_grid);
    const Eigen::MatrixXd cols = ball_average_columns(f, r_grid, plan);
    return max_over_columns(f, cols, std::vector<double>(r_grid.size(), 1.0));
}

GridFunction fractional_maximal(const GridFunction& f, double beta, std::span<const double> r_grid,
                                const TransformPlan& plan) {
    check_beta(plan.param(), beta);
    check_radii(r_grid);
    const Eigen::MatrixXd cols = ball_average_columns(f, r_grid, plan);
    std::vector<double> scale;
    for (double r : r_grid) scale.push_back(std::pow(mu_ball(plan.param(), r), beta / plan.param().dim()));
    return max_over_columns(f, cols, scale);
}

GridFunction riesz_potential_grid(const GridFunction& f, double beta, const TransformPlan& plan) {
    check_beta(plan.param(), beta);
    const std::vector<double> K = half_kernel_masses(*plan.space(), beta);
    const Eigen::VectorXd R = 2.0 * (plan.even_kernel() * Eigen::Map<const Eigen::VectorXd>(K.data(), static_cast<Eigen::Index>(K.size())));
    const SpectralFunction F = forward(f, plan);
    const int M = plan.freq()->half_size();
    std::vector<cplx> g(F.values().begin(), F.values().end());
    for (int m = 0; m < M; ++m) {
        g[static_cast<std::size_t>(M + m)] *= R(m);
        g[static_cast<std::size_t>(M - 1 - m)] *= R(m);
    }
    GridFunction out = synthesize(SpectralFunction(F.grid_ptr(), std::move(g)), plan);
    if (f.is_real()) return GridFunction(out.grid_ptr(), out.real_values(), Sampling::point);
    return out;
}

// ---------------------------------------------------------------------------

PointEvaluator::PointEvaluator(const GridFunction& g, std::span<const double> xs, const TransformPlan& plan)
    : plan_(plan), xs_(xs.begin(), xs.end()) {
    if (!g.is_real()) throw ContractError("PointEvaluator expects real samples");
    for (double x : xs_)
        if (!std::isfinite(x)) throw DomainError("evaluation node is not finite");
    tau_ = translate_columns(g, xs_, plan);
    if (nonnegative_real(g)) tau_ = tau_.cwiseMax(0.0);
}

double PointEvaluator::ball_integral(std::size_t c, double r) const {
    return dunkl::ball_integral(*plan_.space(), tau_.col(static_cast<Eigen::Index>(c)), r);
}

double PointEvaluator::average(std::size_t c, double r) const {
    return ball_integral(c, r) / mu_ball(plan_.param(), r);
}

double PointEvaluator::maximal(std::size_t c, std::span<const double> radii) const {
    check_radii(radii);
    double m = 0.0;
    for (double r : radii) m = std::max(m, average(c, r));
    return m;
}

double PointEvaluator::fractional_maximal(std::size_t c, double beta, std::span<const double> radii) const {
    check_beta(plan_.param(), beta);
    check_radii(radii);
    const double e = beta / plan_.param().dim();
    double m = 0.0;
    for (double r : radii) m = std::max(m, std::pow(mu_ball(plan_.param(), r), e) * average(c, r));
    return m;
}

double PointEvaluator::riesz(std::size_t c, double beta) const {
    const HedbergSplit s = hedberg(c, plan_.space()->extent() * 2.0, beta);
    return s.near + s.far;
}

HedbergSplit PointEvaluator::hedberg(std::size_t c, double r, double beta) const {
    check_beta(plan_.param(), beta);
    if (!(r > 0.0)) throw DomainError("near/far split needs r > 0");
    const QuadratureGrid& g = *plan_.space();
    const auto b = g.boundaries();
    const auto col = tau_.col(static_cast<Eigen::Index>(c));
    std::vector<double> near, far;
    near.reserve(2 * b.size());
    far.reserve(2 * b.size());
    for (int j = 0; j < g.half_size(); ++j) {
        const double lo = b[static_cast<std::size_t>(j)], hi = b[static_cast<std::size_t>(j) + 1];
        const double kn = riesz_kernel_mass(g.param(), beta, lo, std::min(hi, r));
        const double kf = riesz_kernel_mass(g.param(), beta, std::max(lo, r), hi);
        const double t = col(static_cast<Eigen::Index>(g.pos_index(j))) + col(static_cast<Eigen::Index>(g.neg_index(j)));
        near.push_back(kn * t);
        far.push_back(kf * t);
    }
    return {pairwise_sum(near), pairwise_sum(far)};
}

// ---------------------------------------------------------------------------

std::vector<cplx> riesz_potential(const GridFunction& f, double beta, std::span<const double> eval_nodes,
                                  const TransformPlan& plan) {
    check_beta(plan.param(), beta);
    std::vector<cplx> out(eval_nodes.size());
    const auto run = [&](const GridFunction& part, bool imag) {
        const PointEvaluator ev(part, eval_nodes, plan);
        for (std::size_t c = 0; c < eval_nodes.size(); ++c) {
            const double v = ev.riesz(c, beta);
            out[c] += imag ? cplx(0.0, v) : cplx(v, 0.0);
        }
    };
    if (f.is_real()) {
        run(f, false);
    } else {
        const auto v = f.values();
        std::vector<double> re(v.size()), im(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            re[i] = v[i].real();
            im[i] = v[i].imag();
        }
        run(GridFunction(f.grid_ptr(), re, f.sampling()), false);
        run(GridFunction(f.grid_ptr(), im, f.sampling()), true);
    }
    return out;
}

std::vector<double> hl_maximal_at(const GridFunction& f, std::span<const double> r_grid,
                                  std::span<const double> xs, const TransformPlan& plan) {
    const PointEvaluator ev(f.abs(), xs, plan);
    std::vector<double> out(xs.size());
    for (std::size_t c = 0; c < xs.size(); ++c) out[c] = ev.maximal(c, r_grid);
    return out;
}

std::vector<double> fractional_maximal_at(const GridFunction& f, double beta, std::span<const double> r_grid,
                                          std::span<const double> xs, const TransformPlan& plan) {
    const PointEvaluator ev(f.abs(), xs, plan);
    std::vector<double> out(xs.size());
    for (std::size_t c = 0; c < xs.size(); ++c) out[c] = ev.fractional_maximal(c, beta, r_grid);
    return out;
}

HedbergSplit hedberg_split(const GridFunction& f, double x, double r, double beta, const TransformPlan& plan) {
    const double xs[1] = {x};
    const PointEvaluator ev(f, xs, plan);
    return ev.hedberg(0, r, beta);
}

double hedberg_near_constant(const DunklParameter& param, double beta) {
    return param.d() * std::pow(2.0, param.dim() - beta) / (1.0 - std::pow(2.0, -beta));
}

double hedberg_far_constant(const DunklParameter& param, double beta, double alpha) {
    const double e = beta - param.dim() / alpha;
    if (!(e < 0.0))
        throw DomainError(fmt::format("far-part chain needs beta < (2k+2)/alpha, got beta={} alpha={}", beta, alpha));
    const double s = 1.0 - 1.0 / alpha;
    return std::pow(param.d(), s) * std::pow(2.0, param.dim() * s) / (1.0 - std::pow(2.0, e));
}

std::vector<double> hedberg_near_radii(const QuadratureGrid& grid, double r, std::span<const double> r_grid) {
    std::set<double> radii(r_grid.begin(), r_grid.end());
    const double innermost = grid.boundaries()[1];
    for (double rho = r;; rho *= 0.5) {
        radii.insert(rho);
        if (rho < innermost) break;
    }
    return {radii.begin(), radii.end()};
}

} // namespace dunkl
