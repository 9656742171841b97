#include "dunkl/dunkl_operator.hpp"

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

void require_symmetric(const QuadratureGrid& g) {
    for (int j = 0; j < g.half_size(); ++j)
        if (g.node(g.neg_index(j)) != -g.node(g.pos_index(j)))
            throw ContractError("Dunkl operator needs a grid symmetric under x -> -x");
}

} // namespace

GridFunction dunkl_derivative(const GridFunction& f) {
    const QuadratureGrid& g = f.grid();
    require_symmetric(g);
    const auto x = g.nodes();
    const auto v = f.values();
    const std::size_t n = g.size();
    const double two_k_plus_one = 2.0 * g.param().k() + 1.0;

    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx d;
        if (i == 0 || i + 1 == n) {
            // One-sided three-point stencil through i, i+-1, i+-2.
            const std::size_t a = i, b = i == 0 ? 1 : n - 2, c = i == 0 ? 2 : n - 3;
            const double h1 = x[b] - x[a], h2 = x[c] - x[a];
            d = (-(h1 + h2) / (h1 * h2)) * v[a] + (h2 / (h1 * (h2 - h1))) * v[b] - (h1 / (h2 * (h2 - h1))) * v[c];
        } else {
            const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
            d = (h1 * h1 * v[i + 1] - h2 * h2 * v[i - 1] + (h2 * h2 - h1 * h1) * v[i]) / (h1 * h2 * (h1 + h2));
        }
        const std::size_t mirror = n - 1 - i;
        out[i] = d + two_k_plus_one / x[i] * 0.5 * (v[i] - v[mirror]);
    }
    return GridFunction(f.grid_ptr(), std::move(out), Sampling::point);
}

cplx dunkl_derivative_at_zero(const GridFunction& f) {
    const QuadratureGrid& g = f.grid();
    require_symmetric(g);
    const std::size_t p = g.pos_index(0), m = g.neg_index(0);
    const cplx slope = (f[p] - f[m]) / (2.0 * g.node(p));
    return g.param().dim() * slope;
}

} // namespace dunkl
