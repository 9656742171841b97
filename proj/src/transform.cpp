#include "dunkl/transform.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>

namespace dunkl {

namespace {

constexpr double kFilterStrength = 36.04;  // exp(-36.04) is about 2e-16
constexpr int kFilterOrder = 16;
constexpr std::size_t kRowGrain = 16;
constexpr Eigen::Index kColumnChunk = 32;

// Four-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussNodes = {-0.8611363115940526, -0.3399810435848563,
                                               0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussWeights = {0.3478548451374538, 0.6521451548625461,
                                                 0.6521451548625461, 0.3478548451374538};

bool same_grid(const QuadratureGrid& a, const QuadratureGrid& b) {
    return &a == &b || (a.param() == b.param() && a.extent() == b.extent() &&
                        a.half_size() == b.half_size() && a.grading() == b.grading());
}

void check_space(const GridFunction& f, const TransformPlan& plan) {
    if (!same_grid(f.grid(), *plan.space()))
        throw ContractError("function grid does not match the transform plan (" + f.grid().describe() +
                            " vs " + plan.space()->describe() + ")");
}

void check_freq(const SpectralFunction& F, const TransformPlan& plan) {
    if (!same_grid(F.grid(), *plan.freq()))
        throw ContractError("spectral grid does not match the transform plan");
}

// Splits a 2N-sample vector into even/odd half-line sums as N x 2 (re, im).
void split(std::span<const cplx> v, int n, Eigen::MatrixXd& even, Eigen::MatrixXd& odd) {
    even.resize(n, 2);
    odd.resize(n, 2);
    for (int j = 0; j < n; ++j) {
        const cplx p = v[static_cast<std::size_t>(n + j)];
        const cplx m = v[static_cast<std::size_t>(n - 1 - j)];
        even(j, 0) = p.real() + m.real();
        even(j, 1) = p.imag() + m.imag();
        odd(j, 0) = p.real() - m.real();
        odd(j, 1) = p.imag() - m.imag();
    }
}

// Product a^T b (transpose_a) or a b, evaluated in fixed column chunks so the
// floating-point result does not depend on the thread count.
Eigen::MatrixXd chunked_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, bool transpose_a) {
    const Eigen::Index rows = transpose_a ? a.cols() : a.rows();
    Eigen::MatrixXd out(rows, b.cols());
    const auto cols = static_cast<std::size_t>(b.cols());
    parallel_for(cols, kColumnChunk, [&](std::size_t lo, std::size_t hi) {
        const auto c0 = static_cast<Eigen::Index>(lo), nc = static_cast<Eigen::Index>(hi - lo);
        if (transpose_a)
            out.middleCols(c0, nc).noalias() = a.transpose() * b.middleCols(c0, nc);
        else
            out.middleCols(c0, nc).noalias() = a * b.middleCols(c0, nc);
    });
    return out;
}

} // namespace

SpectralFunction::SpectralFunction(GridPtr freq_grid, std::vector<cplx> values)
    : grid_(std::move(freq_grid)), values_(std::move(values)) {
    if (!grid_ || values_.size() != grid_->size())
        throw ContractError("spectral function size does not match its frequency grid");
    for (const cplx& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DataError("spectral function contains a non-finite value");
}

TransformPlan::TransformPlan(GridPtr space, GridPtr freq) : space_(std::move(space)), freq_(std::move(freq)) {
    if (!space_ || !freq_) throw ContractError("transform plan needs two grids");
    if (!(space_->param() == freq_->param()))
        throw ContractError("space and frequency grids carry different Dunkl parameters");
    cfg_ = GridConfig{space_->extent(), space_->half_size(), freq_->extent(), freq_->half_size(),
                      space_->grading()};
    const auto lam = freq_->half_nodes();
    filter_.resize(lam.size());
    for (std::size_t m = 0; m < lam.size(); ++m)
        filter_[m] = std::exp(-kFilterStrength * std::pow(lam[m] / freq_->extent(), kFilterOrder));
}

std::shared_ptr<const TransformPlan> TransformPlan::make(const DunklParameter& param, const GridConfig& cfg) {
    auto space = build_grid(param, cfg.extent, cfg.half_cells, cfg.grading);
    auto freq = build_grid(param, cfg.freq_extent, cfg.freq_half_cells, cfg.grading);
    return std::make_shared<const TransformPlan>(std::move(space), std::move(freq));
}

const Eigen::MatrixXd& TransformPlan::even_kernel() const {
    std::call_once(point_once_, [this] {
        const auto lam = freq_->half_nodes();
        const auto x = space_->half_nodes();
        const Eigen::Index M = static_cast<Eigen::Index>(lam.size()), N = static_cast<Eigen::Index>(x.size());
        const double k = param().k();
        const double inv_dim = 1.0 / param().dim();
        jk_.resize(M, N);
        ak_.resize(M, N);
        parallel_for(static_cast<std::size_t>(M), kRowGrain, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t m = lo; m < hi; ++m)
                for (Eigen::Index j = 0; j < N; ++j) {
                    const double t = lam[m] * x[static_cast<std::size_t>(j)];
                    const auto mi = static_cast<Eigen::Index>(m);
                    jk_(mi, j) = normalized_bessel_j(k, t);
                    ak_(mi, j) = t * inv_dim * normalized_bessel_j(k + 1.0, t);
                }
        });
    });
    return jk_;
}

const Eigen::MatrixXd& TransformPlan::odd_kernel() const {
    even_kernel();
    return ak_;
}

const Eigen::MatrixXd& TransformPlan::cell_even_kernel() const {
    std::call_once(cell_once_, [this] {
        const auto lam = freq_->half_nodes();
        const auto b = space_->boundaries();
        const Eigen::Index M = static_cast<Eigen::Index>(lam.size());
        const Eigen::Index N = static_cast<Eigen::Index>(b.size()) - 1;
        const double k = param().k(), dim = param().dim(), half_d = 0.5 * param().d(), c = param().c();
        std::vector<double> b_pow(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) b_pow[i] = std::pow(b[i], dim);
        ce_.resize(M, N);
        co_.resize(M, N);
        parallel_for(static_cast<std::size_t>(M), kRowGrain, [&](std::size_t lo, std::size_t hi) {
            std::vector<double> edge(b.size());
            for (std::size_t m = lo; m < hi; ++m) {
                const auto mi = static_cast<Eigen::Index>(m);
                // d/dx [x^{2k+2} j_{k+1}(l x)] = (2k+2) x^{2k+1} j_k(l x).
                for (std::size_t i = 0; i < b.size(); ++i) edge[i] = b_pow[i] * normalized_bessel_j(k + 1.0, lam[m] * b[i]);
                for (Eigen::Index j = 0; j < N; ++j) {
                    const auto ju = static_cast<std::size_t>(j);
                    ce_(mi, j) = half_d * (edge[ju + 1] - edge[ju]);
                    const double mid = 0.5 * (b[ju] + b[ju + 1]), half = 0.5 * (b[ju + 1] - b[ju]);
                    double acc = 0.0;
                    for (std::size_t g = 0; g < 4; ++g) {
                        const double xg = mid + half * kGaussNodes[g];
                        const double t = lam[m] * xg;
                        acc += kGaussWeights[g] * std::pow(xg, dim - 1.0) * t / dim * normalized_bessel_j(k + 1.0, t);
                    }
                    co_(mi, j) = c * half * acc;
                }
            }
        });
    });
    return ce_;
}

const Eigen::MatrixXd& TransformPlan::cell_odd_kernel() const {
    cell_even_kernel();
    return co_;
}

const BallTranslateTable& TransformPlan::ball_translate_table(double r, int stride) const {
    if (!(r > 0.0)) throw DomainError("ball translate table needs r > 0");
    if (stride < 1) throw ConfigError("evaluation stride must be positive");
    {
        std::lock_guard lock(table_mutex_);
        const auto it = tables_.find({r, stride});
        if (it != tables_.end()) return *it->second;
    }
    const Eigen::MatrixXd& jk = even_kernel();
    const Eigen::MatrixXd& ak = odd_kernel();
    const auto lam = freq_->half_nodes();
    const auto wl = freq_->half_weights();
    const int n = space_->half_size();
    const double mass = mu_ball(param(), r);

    auto table = std::make_shared<BallTranslateTable>();
    for (int j0 = 0; j0 < n; j0 += stride) {
        const int j1 = std::min(n, j0 + stride);
        table->y_cells.push_back(std::min(n - 1, j0 + stride / 2));
        double m = 0.0;
        for (int j = j0; j < j1; ++j) m += space_->half_weights()[static_cast<std::size_t>(j)];
        table->y_mass.push_back(m);
    }
    const auto ny = static_cast<Eigen::Index>(table->y_cells.size());
    Eigen::VectorXd diag(jk.rows());
    for (Eigen::Index m = 0; m < jk.rows(); ++m) {
        const auto mu = static_cast<std::size_t>(m);
        diag(m) = 2.0 * wl[mu] * filter_[mu] * mass * normalized_bessel_j(param().k() + 1.0, r * lam[mu]);
    }
    Eigen::MatrixXd je(jk.rows(), ny), ao(ak.rows(), ny);
    for (Eigen::Index c = 0; c < ny; ++c) {
        const Eigen::Index col = table->y_cells[static_cast<std::size_t>(c)];
        je.col(c) = diag.cwiseProduct(jk.col(col));
        ao.col(c) = diag.cwiseProduct(ak.col(col));
    }
    table->even = chunked_product(jk, je, true);
    table->odd = chunked_product(ak, ao, true);

    std::lock_guard lock(table_mutex_);
    auto [it, inserted] = tables_.emplace(std::make_pair(r, stride), std::move(table));
    return *it->second;
}

void TransformPlan::release_tables() const {
    std::lock_guard lock(table_mutex_);
    tables_.clear();
}

// ---------------------------------------------------------------------------

SpectralFunction forward(const GridFunction& f, const TransformPlan& plan) {
    check_space(f, plan);
    const int n = plan.space()->half_size();
    const int M = plan.freq()->half_size();
    Eigen::MatrixXd e, o;
    split(f.values(), n, e, o);

    const bool cell = f.sampling() == Sampling::cell;
    const Eigen::MatrixXd& ke = cell ? plan.cell_even_kernel() : plan.even_kernel();
    const Eigen::MatrixXd& ko = cell ? plan.cell_odd_kernel() : plan.odd_kernel();
    if (!cell) {
        const auto w = plan.space()->half_weights();
        for (int j = 0; j < n; ++j) {
            e.row(j) *= w[static_cast<std::size_t>(j)];
            o.row(j) *= w[static_cast<std::size_t>(j)];
        }
    }
    const Eigen::MatrixXd u = ke * e;
    const Eigen::MatrixXd v = ko * o;

    std::vector<cplx> out(plan.freq()->size());
    for (int m = 0; m < M; ++m) {
        out[static_cast<std::size_t>(M + m)] = {u(m, 0) + v(m, 1), u(m, 1) - v(m, 0)};
        out[static_cast<std::size_t>(M - 1 - m)] = {u(m, 0) - v(m, 1), u(m, 1) + v(m, 0)};
    }
    return SpectralFunction(plan.freq(), std::move(out));
}

namespace {

GridFunction inverse_impl(const SpectralFunction& F, const TransformPlan& plan, bool filtered) {
    check_freq(F, plan);
    const int n = plan.space()->half_size();
    const int M = plan.freq()->half_size();
    Eigen::MatrixXd E, O;
    split(F.values(), M, E, O);
    const auto w = plan.freq()->half_weights();
    const auto s = plan.filter();
    for (int m = 0; m < M; ++m) {
        const auto mu = static_cast<std::size_t>(m);
        const double c = filtered ? w[mu] * s[mu] : w[mu];
        E.row(m) *= c;
        O.row(m) *= c;
    }
    const Eigen::MatrixXd er = plan.even_kernel().transpose() * E;
    const Eigen::MatrixXd orr = plan.odd_kernel().transpose() * O;

    std::vector<cplx> out(plan.space()->size());
    for (int j = 0; j < n; ++j) {
        // f(+-x) = (E-part) +- i (O-part)
        out[static_cast<std::size_t>(n + j)] = {er(j, 0) - orr(j, 1), er(j, 1) + orr(j, 0)};
        out[static_cast<std::size_t>(n - 1 - j)] = {er(j, 0) + orr(j, 1), er(j, 1) - orr(j, 0)};
    }
    return GridFunction(plan.space(), std::move(out), Sampling::point);
}

} // namespace

GridFunction inverse(const SpectralFunction& F, const TransformPlan& plan) {
    return inverse_impl(F, plan, false);
}

GridFunction synthesize(const SpectralFunction& F, const TransformPlan& plan) {
    return inverse_impl(F, plan, true);
}

double truncation_error(const SpectralFunction& F) {
    const auto& g = F.grid();
    const double edge = 0.8 * g.extent();
    std::vector<double> all(F.size()), outer(F.size(), 0.0);
    for (std::size_t i = 0; i < F.size(); ++i) {
        all[i] = std::norm(F[i]) * g.weight(i);
        if (std::abs(g.node(i)) > edge) outer[i] = all[i];
    }
    const double total = pairwise_sum(all);
    return total > 0.0 ? std::sqrt(pairwise_sum(outer) / total) : 0.0;
}

double indicator_transform_closed_form(const DunklParameter& param, double r, double lambda) {
    if (!(r > 0.0)) throw DomainError(fmt::format("indicator transform needs r > 0, got {}", r));
    return mu_ball(param, r) * normalized_bessel_j(param.k() + 1.0, r * lambda);
}

SpectralHalves split_halves(const SpectralFunction& F) {
    SpectralHalves h;
    split(F.values(), F.grid().half_size(), h.even, h.odd);
    return h;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> synthesize_columns(const TransformPlan& plan,
                                                               const Eigen::MatrixXd& even_cols,
                                                               const Eigen::MatrixXd& odd_cols) {
    return {chunked_product(plan.even_kernel(), even_cols, true),
            chunked_product(plan.odd_kernel(), odd_cols, true)};
}

} // namespace dunkl
