#include "dunkl/translation.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace dunkl {

namespace {

constexpr double kUndershootFraction = 1e-6;
constexpr double kTailFraction = 1e-8;

bool nonnegative_real(const GridFunction& f) {
    return std::all_of(f.values().begin(), f.values().end(),
                       [](const cplx& v) { return v.imag() == 0.0 && v.real() >= 0.0; });
}

// Applies the undershoot policy in place; returns the deepest value left negative.
double clamp_undershoot(std::vector<double>& v, double sup) {
    const double eps = kUndershootFraction * sup;
    double deepest = 0.0;
    for (double& x : v) {
        if (x < 0.0 && x >= -eps) x = 0.0;
        deepest = std::min(deepest, x);
    }
    return deepest;
}

GridFunction real_result(const GridFunction& synth, const GridFunction& input, const char* what) {
    std::vector<double> re = synth.real_values();
    if (nonnegative_real(input)) {
        const double sup = input.sup_norm();
        const double deepest = clamp_undershoot(re, sup);
        GridFunction out(synth.grid_ptr(), re, Sampling::point);
        if (deepest < 0.0)
            out.add_warning(fmt::format("{}: undershoot {:.3e} of a nonnegative input exceeds the clamp band {:.1e}",
                                        what, deepest, kUndershootFraction * sup));
        return out;
    }
    return GridFunction(synth.grid_ptr(), re, Sampling::point);
}

// Even/odd weighted spectral columns for a batch of real multipliers m_c(l)
// (even in l) applied to the transform of a real function. Returns the full
// grid (2N x n) values.
Eigen::MatrixXd synthesize_real_batch(const SpectralFunction& F, const TransformPlan& plan,
                                      const std::function<void(std::size_t m, double lambda, double* out_even,
                                                               double* out_odd)>& fill,
                                      std::size_t columns) {
    const int M = plan.freq()->half_size();
    const int n = plan.space()->half_size();
    const auto lam = plan.freq()->half_nodes();
    const auto w = plan.freq()->half_weights();
    const auto s = plan.filter();
    const auto nc = static_cast<Eigen::Index>(columns);
    Eigen::MatrixXd even(M, nc), odd(M, nc);
    std::vector<double> ev(columns), od(columns);
    for (int m = 0; m < M; ++m) {
        const auto mu = static_cast<std::size_t>(m);
        fill(mu, lam[mu], ev.data(), od.data());
        const double c = w[mu] * s[mu];
        for (std::size_t col = 0; col < columns; ++col) {
            even(m, static_cast<Eigen::Index>(col)) = c * ev[col];
            odd(m, static_cast<Eigen::Index>(col)) = c * od[col];
        }
    }
    (void)F;
    auto [er, orr] = synthesize_columns(plan, even, odd);
    Eigen::MatrixXd out(2 * n, nc);
    for (int j = 0; j < n; ++j) {
        // f(+-x) = J^T E +- i A^T O with O purely imaginary: i * (i o) = -o.
        out.row(n + j) = er.row(j) - orr.row(j);
        out.row(n - 1 - j) = er.row(j) + orr.row(j);
    }
    return out;
}

void require_real(const GridFunction& f, const char* what) {
    if (!f.is_real()) throw ContractError(fmt::format("{} expects a real-valued function", what));
}

} // namespace

bool translation_tail_warning(const GridFunction& f, double y) {
    const QuadratureGrid& g = f.grid();
    const double limit = g.extent() - std::abs(y);
    std::vector<double> all(f.size()), tail(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        all[i] = std::abs(f[i]) * g.weight(i);
        if (std::abs(g.node(i)) > limit) tail[i] = all[i];
    }
    return pairwise_sum(tail) > kTailFraction * pairwise_sum(all);
}

GridFunction apply_multiplier(const SpectralFunction& F, const std::function<cplx(double)>& m,
                              const TransformPlan& plan) {
    std::vector<cplx> v(F.values().begin(), F.values().end());
    const auto lam = F.grid().nodes();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= m(lam[i]);
    return synthesize(SpectralFunction(F.grid_ptr(), std::move(v)), plan);
}

GridFunction translate(const GridFunction& f, double y, const TransformPlan& plan) {
    if (!std::isfinite(y)) throw DomainError("translate: non-finite shift");
    if (y == 0.0) return f;
    const DunklParameter& p = plan.param();
    const SpectralFunction F = forward(f, plan);
    GridFunction out = apply_multiplier(F, [&](double l) { return dunkl_kernel_imag(p, y * l); }, plan);
    if (f.is_real()) out = real_result(out, f, "translate");
    if (translation_tail_warning(f, y))
        out.add_warning(fmt::format("translate: mass of f beyond |x| > X - |y| = {} exceeds {:.0e} of ||f||_1",
                                    f.grid().extent() - std::abs(y), kTailFraction));
    return out;
}

cplx translate_at(const SpectralFunction& F, double x, double y, const TransformPlan& plan) {
    const DunklParameter& p = plan.param();
    const int M = plan.freq()->half_size();
    const auto lam = plan.freq()->half_nodes();
    const auto w = plan.freq()->half_weights();
    const auto s = plan.filter();
    std::vector<double> re(static_cast<std::size_t>(M)), im(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const auto mu = static_cast<std::size_t>(m);
        const cplx ex = dunkl_kernel_imag(p, x * lam[mu]);
        const cplx ey = dunkl_kernel_imag(p, y * lam[mu]);
        const cplx v = ex * ey * F[static_cast<std::size_t>(M + m)] +
                       std::conj(ex) * std::conj(ey) * F[static_cast<std::size_t>(M - 1 - m)];
        re[mu] = w[mu] * s[mu] * v.real();
        im[mu] = w[mu] * s[mu] * v.imag();
    }
    return {pairwise_sum(re), pairwise_sum(im)};
}

cplx translate_at(const GridFunction& f, double x, double y, const TransformPlan& plan) {
    return translate_at(forward(f, plan), x, y, plan);
}

Eigen::MatrixXd translate_columns(const GridFunction& f, std::span<const double> xs, const TransformPlan& plan) {
    require_real(f, "translate_columns");
    const DunklParameter& p = plan.param();
    const SpectralFunction F = forward(f, plan);
    const int M = plan.freq()->half_size();
    Eigen::MatrixXd out = synthesize_real_batch(
        F, plan,
        [&](std::size_t m, double l, double* ev, double* od) {
            const cplx fp = F[static_cast<std::size_t>(M) + m];
            const cplx fm = F[static_cast<std::size_t>(M) - 1 - m];
            for (std::size_t c = 0; c < xs.size(); ++c) {
                const cplx e = dunkl_kernel_imag(p, xs[c] * l);
                const cplx gp = e * fp, gm = std::conj(e) * fm;
                ev[c] = (gp + gm).real();
                od[c] = (gp - gm).imag();
            }
        },
        xs.size());
    const auto v = f.real_values();
    for (std::size_t c = 0; c < xs.size(); ++c)
        if (xs[c] == 0.0)
            out.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    return out;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g, const TransformPlan& plan) {
    if (&f.grid() != &g.grid() && !(f.grid().param() == g.grid().param() && f.size() == g.size()))
        throw ContractError("convolve: operands live on different grids");
    const SpectralFunction F = forward(f, plan);
    const SpectralFunction G = forward(g, plan);
    std::vector<cplx> prod(F.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = F[i] * G[i];
    GridFunction out = synthesize(SpectralFunction(F.grid_ptr(), std::move(prod)), plan);
    if (f.is_real() && g.is_real()) return GridFunction(out.grid_ptr(), out.real_values(), Sampling::point);
    return out;
}

Eigen::MatrixXd ball_average_columns(const GridFunction& f, std::span<const double> rs, const TransformPlan& plan) {
    for (double r : rs)
        if (!(r > 0.0)) throw DomainError(fmt::format("ball average needs r > 0, got {}", r));
    const GridFunction a = f.abs();
    const SpectralFunction F = forward(a, plan);
    const int M = plan.freq()->half_size();
    const double k1 = plan.param().k() + 1.0;
    return synthesize_real_batch(
        F, plan,
        [&](std::size_t m, double l, double* ev, double* od) {
            const cplx fp = F[static_cast<std::size_t>(M) + m];
            const cplx fm = F[static_cast<std::size_t>(M) - 1 - m];
            for (std::size_t c = 0; c < rs.size(); ++c) {
                const double j = normalized_bessel_j(k1, rs[c] * l);
                ev[c] = j * (fp + fm).real();
                od[c] = j * (fp - fm).imag();
            }
        },
        rs.size());
}

GridFunction ball_average(const GridFunction& f, double r, const TransformPlan& plan) {
    const double rr[1] = {r};
    const Eigen::MatrixXd col = ball_average_columns(f, rr, plan);
    std::vector<double> v(col.data(), col.data() + col.rows());
    const double deepest = clamp_undershoot(v, f.sup_norm());
    GridFunction out(f.grid_ptr(), v, Sampling::point);
    if (deepest < 0.0) out.add_warning(fmt::format("ball_average: undershoot {:.3e} left in place", deepest));
    return out;
}

double ball_integral(const QuadratureGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& tau, double r) {
    const auto b = grid.boundaries();
    const int n = grid.half_size();
    std::vector<double> t;
    t.reserve(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < n && b[static_cast<std::size_t>(j)] < r; ++j) {
        const std::size_t ip = grid.pos_index(j), im = grid.neg_index(j);
        const double mass = b[static_cast<std::size_t>(j) + 1] <= r ? grid.weight(ip) : grid.overlap_mass(ip, -r, r);
        t.push_back(tau(static_cast<Eigen::Index>(ip)) * mass);
        t.push_back(tau(static_cast<Eigen::Index>(im)) * mass);
    }
    return pairwise_sum(t);
}

PointwiseBoundReport translate_pointwise_bound_check(const TransformPlan& plan, double r, double x,
                                                     std::span<const double> y_samples, double tol) {
    PointwiseBoundReport rep;
    rep.x = x;
    rep.tolerance = tol;
    const GridFunction chi = ball_indicator(plan.space(), r, &rep.r);
    rep.mu_ball = mu_ball(plan.param(), rep.r);
    const SpectralFunction F = forward(chi, plan);

    rep.min_value = kInf;
    rep.max_value = -kInf;
    for (double y : y_samples) {
        const double v = x == 0.0 ? (Ball{0.0, rep.r}.contains(y) ? 1.0 : 0.0) : translate_at(F, x, y, plan).real();
        rep.min_value = std::min(rep.min_value, v);
        rep.max_value = std::max(rep.max_value, v);
    }
    const GridFunction tau = x == 0.0 ? chi : translate(chi, x, plan);
    const QuadratureGrid& g = *plan.space();
    const double lo = std::max(0.0, std::abs(x) - rep.r), hi = std::abs(x) + rep.r;
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        // mass of the cell outside the annulus lo < |y| < hi
        const double inside = g.node(i) > 0.0 ? g.overlap_mass(i, lo, hi) : g.overlap_mass(i, -hi, -lo);
        out[i] = std::abs(tau[i].real()) * (g.weight(i) - inside);
    }
    rep.mass_outside = pairwise_sum(out);
    rep.lower_ok = rep.min_value >= -tol;
    rep.upper_ok = rep.max_value <= 1.0 + tol;
    rep.support_ok = rep.mass_outside <= tol * rep.mu_ball;
    return rep;
}

} // namespace dunkl
