#include "dunkl/amalgam.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/translation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dunkl {

std::vector<double> half_octave_radii(int lo, int hi) {
    std::vector<double> r;
    for (int j = lo; j <= hi; ++j) r.push_back(std::pow(2.0, 0.5 * j));
    return r;
}

std::vector<double> default_fofana_radii() { return half_octave_radii(-8, 8); }

DerivedExponents derive_exponents(const DunklParameter& param, double q, double p, double alpha, double beta) {
    check_fofana_order(q, p, alpha);
    const double n = param.dim();
    if (!(beta > 0.0) || !(beta < n / alpha))
        throw DomainError(fmt::format("beta must lie in (0, (2k+2)/alpha) = (0, {}), got {}", n / alpha, beta));
    const double shrink = 1.0 - alpha * beta / n;
    DerivedExponents d{};
    d.alpha_star = 1.0 / (1.0 / alpha - beta / n);
    d.pbar = std::isinf(p) ? kInf : p / shrink;
    d.qbar = q / shrink;
    return d;
}

void check_fofana_order(double q, double p, double alpha) {
    check_exponent(q, "q");
    check_exponent(p, "p");
    check_exponent(alpha, "alpha");
    if (!(q <= alpha && alpha <= p))
        throw DomainError(fmt::format("Fofana exponents need q <= alpha <= p, got q={} alpha={} p={}", q, alpha, p));
}

namespace {

double scale_factor(const DunklParameter& param, double r, double alpha, double q, double p) {
    const double e = 1.0 / alpha - 1.0 / q - (std::isinf(p) ? 0.0 : 1.0 / p);
    return std::pow(mu_ball(param, r), e);
}

// L^p norm over the grid of y -> max |f| over nodes z with lo(y) < |z| < hi(y).
double sup_block_norm(const GridFunction& f, double p, double r) {
    const QuadratureGrid& g = f.grid();
    const int n = g.half_size();
    const auto z = g.half_nodes();
    // Fold onto |z|, then a sparse table for range maxima.
    std::vector<std::vector<double>> table(1, std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j)
        table[0][static_cast<std::size_t>(j)] = std::max(std::abs(f[g.pos_index(j)]), std::abs(f[g.neg_index(j)]));
    for (int len = 1; 2 * len <= n; len *= 2) {
        const auto& prev = table.back();
        std::vector<double> next(static_cast<std::size_t>(n - 2 * len + 1));
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::max(prev[i], prev[i + static_cast<std::size_t>(len)]);
        table.push_back(std::move(next));
    }
    const auto range_max = [&](int lo, int hi) {  // inclusive
        if (hi < lo) return 0.0;
        int level = 0;
        while ((2 << level) <= hi - lo + 1) ++level;
        return std::max(table[static_cast<std::size_t>(level)][static_cast<std::size_t>(lo)],
                        table[static_cast<std::size_t>(level)][static_cast<std::size_t>(hi - (1 << level) + 1)]);
    };
    std::vector<double> v(g.size());
    for (int j = 0; j < n; ++j) {
        const double y = z[static_cast<std::size_t>(j)];
        const double lo = std::max(0.0, y - r), hi = y + r;
        const int a = static_cast<int>(std::upper_bound(z.begin(), z.end(), lo) - z.begin());
        const int b = static_cast<int>(std::lower_bound(z.begin(), z.end(), hi) - z.begin()) - 1;
        const double m = range_max(a, b);
        v[g.pos_index(j)] = m;
        v[g.neg_index(j)] = m;
    }
    return lp_norm_samples(v, g.weights(), p);
}

} // namespace

Eigen::MatrixXd block_profiles(const GridFunction& f, double q, std::span<const double> rs, const TransformPlan& plan) {
    check_exponent(q, "q");
    if (std::isinf(q)) throw DomainError("block profiles are defined for q < inf");
    Eigen::MatrixXd cols = ball_average_columns(f.abs_pow(q), rs, plan);
    for (std::size_t c = 0; c < rs.size(); ++c)
        cols.col(static_cast<Eigen::Index>(c)) *= mu_ball(plan.param(), rs[c]);
    return cols.cwiseMax(0.0);
}

double block_norm_continuous(const GridFunction& f, double q, double p, double r, const TransformPlan& plan) {
    check_exponent(q, "q");
    check_exponent(p, "p");
    if (!(r > 0.0)) throw DomainError(fmt::format("block norm needs r > 0, got {}", r));
    if (std::isinf(q)) return sup_block_norm(f, p, r);
    const double rr[1] = {r};
    const Eigen::MatrixXd prof = block_profiles(f, q, rr, plan);
    std::vector<double> v(static_cast<std::size_t>(prof.rows()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(prof(static_cast<Eigen::Index>(i), 0), 1.0 / q);
    return lp_norm_samples(v, f.grid().weights(), p);
}

ComparabilityRange local_comparability(const GridFunction& f, double q, double y_max, const TransformPlan& plan,
                                       int stride, double floor) {
    if (stride < 1) throw ConfigError("stride must be >= 1");
    const double one[1] = {1.0};
    const Eigen::MatrixXd prof = block_profiles(f, q, one, plan);
    const QuadratureGrid& g = f.grid();
    const GridFunction fq = f.abs_pow(q);
    ComparabilityRange out;
    out.lower = kInf;
    for (std::size_t i = 0; i < g.size(); i += static_cast<std::size_t>(stride)) {
        const double y = g.node(i);
        if (std::abs(y) > y_max) continue;
        std::vector<double> parts;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double m = g.overlap_mass(j, y - 1.0, y + 1.0);
            if (m > 0.0) parts.push_back(m * fq[j].real());
        }
        const double den = pairwise_sum(parts);
        if (den < floor) continue;
        const double ratio = prof(static_cast<Eigen::Index>(i), 0) / den;
        ++out.samples;
        if (ratio < out.lower) {
            out.lower = ratio;
            out.argmin_y = y;
        }
        if (ratio > out.upper) {
            out.upper = ratio;
            out.argmax_y = y;
        }
    }
    if (out.samples == 0) throw DataError("local comparability: no node with a nonnegligible denominator");
    return out;
}

double block_norm_discrete(const GridFunction& f, double q, double p, double r) {
    check_exponent(q, "q");
    check_exponent(p, "p");
    if (!(r > 0.0)) throw DomainError(fmt::format("block norm needs r > 0, got {}", r));
    const QuadratureGrid& g = f.grid();
    const double X = g.extent();
    const long lmin = static_cast<long>(std::floor(-X / r));
    const long lmax = static_cast<long>(std::floor(X / r));
    const std::size_t cells = static_cast<std::size_t>(lmax - lmin + 1);
    // Local L^q content per block: sum |f|^q * overlap (or max |f| for q = inf).
    std::vector<std::vector<double>> parts(cells);
    const auto b = g.boundaries();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int j = g.cell_of(i);
        double lo = b[static_cast<std::size_t>(j)], hi = b[static_cast<std::size_t>(j) + 1];
        if (g.node(i) < 0.0) {
            const double t = lo;
            lo = -hi;
            hi = -t;
        }
        const double a = std::abs(f[i]);
        const long l0 = static_cast<long>(std::floor(lo / r));
        const long l1 = std::min(lmax, static_cast<long>(std::floor(hi / r)));
        for (long l = std::max(lmin, l0); l <= l1; ++l) {
            const double m = g.overlap_mass(i, r * static_cast<double>(l), r * static_cast<double>(l + 1));
            if (m <= 0.0) continue;
            auto& bucket = parts[static_cast<std::size_t>(l - lmin)];
            if (std::isinf(q)) bucket.push_back(a);
            else bucket.push_back(std::pow(a, q) * m);
        }
    }
    std::vector<double> terms(cells, 0.0);
    double sup = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const double lo = r * static_cast<double>(lmin + static_cast<long>(c));
        const double mass = g.primitive(lo + r) - g.primitive(lo);
        double local;
        if (std::isinf(q)) {
            local = parts[c].empty() ? 0.0 : *std::max_element(parts[c].begin(), parts[c].end());
        } else {
            local = std::pow(pairwise_sum(parts[c]), 1.0 / q);
        }
        if (std::isinf(p)) {
            sup = std::max(sup, local);
        } else {
            terms[c] = mass * std::pow(local, p);
        }
    }
    if (std::isinf(p)) return sup;
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

NormResult fofana_norm(const GridFunction& f, const NormSpec& spec, const TransformPlan& plan) {
    check_fofana_order(spec.q, spec.p, spec.alpha);
    if (spec.r_grid.empty()) throw ConfigError("Fofana norm needs a nonempty radius grid");
    std::vector<double> vals(spec.r_grid.size());
    if (std::isinf(spec.q)) {
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = sup_block_norm(f, spec.p, spec.r_grid[i]);
    } else {
        const Eigen::MatrixXd prof = block_profiles(f, spec.q, spec.r_grid, plan);
        std::vector<double> v(static_cast<std::size_t>(prof.rows()));
        for (std::size_t c = 0; c < vals.size(); ++c) {
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = std::pow(prof(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)), 1.0 / spec.q);
            vals[c] = lp_norm_samples(v, f.grid().weights(), spec.p);
        }
    }
    NormResult best;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double v = scale_factor(f.grid().param(), spec.r_grid[i], spec.alpha, spec.q, spec.p) * vals[i];
        if (v > best.value || i == 0) best = {v, spec.r_grid[i]};
    }
    return best;
}

NormResult fofana_norm_discrete(const GridFunction& f, const NormSpec& spec) {
    check_fofana_order(spec.q, spec.p, spec.alpha);
    if (spec.r_grid.empty()) throw ConfigError("Fofana norm needs a nonempty radius grid");
    NormResult best;
    for (std::size_t i = 0; i < spec.r_grid.size(); ++i) {
        const double r = spec.r_grid[i];
        const double v = scale_factor(f.grid().param(), r, spec.alpha, spec.q, spec.p) *
                         block_norm_discrete(f, spec.q, spec.p, r);
        if (v > best.value || i == 0) best = {v, r};
    }
    return best;
}

namespace {

// sup_t t mu(g > t) = max_i g_(i) S_i over the decreasing arrangement, found by
// sorting only the entries above a threshold t. Entries below t contribute at
// most t * S_total, so the answer is exact once best >= t * S_total.
double weak_l1_sup(const std::vector<double>& g, std::span<const double> w, std::vector<std::size_t>& scratch) {
    double gmax = 0.0, total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] > 0.0) {
            gmax = std::max(gmax, g[i]);
            total += w[i];
        }
    if (gmax == 0.0) return 0.0;
    double t = 0.25 * gmax;
    for (;;) {
        scratch.clear();
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] >= t && g[i] > 0.0) scratch.push_back(i);
        std::sort(scratch.begin(), scratch.end(), [&](std::size_t a, std::size_t b) {
            return g[a] > g[b] || (g[a] == g[b] && a < b);
        });
        double best = 0.0, acc = 0.0;
        for (std::size_t i : scratch) {
            acc += w[i];
            best = std::max(best, g[i] * acc);
        }
        if (t == 0.0 || best >= t * total) return best;
        t *= 0.125;
        if (t < 1e-30 * gmax) t = 0.0;
    }
}

} // namespace

double weak_block_norm(const GridFunction& f, double qbar, double pbar, double r, const TransformPlan& plan,
                       int stride) {
    check_exponent(qbar, "qbar");
    check_exponent(pbar, "pbar");
    if (std::isinf(qbar)) throw DomainError("weak block norm needs qbar < inf");
    if (!(r > 0.0)) throw DomainError(fmt::format("weak block norm needs r > 0, got {}", r));
    const QuadratureGrid& g = f.grid();
    const int n = g.half_size();
    const BallTranslateTable& tab = plan.ball_translate_table(r, stride);
    const std::size_t ny = tab.y_cells.size();

    std::vector<double> a(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) a[i] = std::pow(std::abs(f[i]), qbar);

    // Columns 0..ny-1 are y > 0, ny..2ny-1 are y < 0.
    std::vector<double> inner(2 * ny);
    parallel_for(2 * ny, 8, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> gv(g.size());
        std::vector<std::size_t> scratch;
        scratch.reserve(g.size());
        for (std::size_t c = lo; c < hi; ++c) {
            const std::size_t col = c % ny;
            const double sy = c < ny ? 1.0 : -1.0;
            const auto ci = static_cast<Eigen::Index>(col);
            for (int j = 0; j < n; ++j) {
                const double e = tab.even(j, ci), o = tab.odd(j, ci);
                const std::size_t ip = g.pos_index(j), im = g.neg_index(j);
                gv[ip] = a[ip] * std::max(0.0, e + sy * o);
                gv[im] = a[im] * std::max(0.0, e - sy * o);
            }
            inner[c] = std::pow(weak_l1_sup(gv, g.weights(), scratch), 1.0 / qbar);
        }
    });
    std::vector<double> mass(2 * ny);
    for (std::size_t c = 0; c < 2 * ny; ++c) mass[c] = tab.y_mass[c % ny];
    return lp_norm_samples(inner, mass, pbar);
}

NormResult weak_fofana_norm(const GridFunction& f, const NormSpec& spec, const TransformPlan& plan) {
    check_fofana_order(spec.q, spec.p, spec.alpha);
    if (spec.r_grid.empty()) throw ConfigError("weak Fofana norm needs a nonempty radius grid");
    NormResult best;
    for (std::size_t i = 0; i < spec.r_grid.size(); ++i) {
        const double r = spec.r_grid[i];
        const double v = scale_factor(f.grid().param(), r, spec.alpha, spec.q, spec.p) *
                         weak_block_norm(f, spec.q, spec.p, r, plan, spec.stride);
        if (v > best.value || i == 0) best = {v, r};
    }
    return best;
}

} // namespace dunkl
