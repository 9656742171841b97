#include "dunkl/amalgam.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/test_functions.hpp"

#include <doctest.h>

#include <cmath>

using namespace dunkl;

namespace {

PlanPtr plan_for(double k, int n = 1024) {
    GridConfig cfg;
    cfg.half_cells = n;
    cfg.freq_half_cells = n;
    return TransformPlan::make(DunklParameter(k), cfg);
}

// chi_{[0,1)} on a uniform grid whose boundaries include 0 and 1.
GridFunction half_cell_indicator(const GridPtr& g) {
    std::vector<double> v(g->size(), 0.0);
    for (std::size_t i = 0; i < g->size(); ++i)
        if (g->node(i) > 0.0 && g->node(i) < 1.0) v[i] = 1.0;
    return GridFunction(g, v, Sampling::cell);
}

} // namespace

TEST_CASE("radius grids") {
    const auto r = default_fofana_radii();
    CHECK(r.size() == 17);
    CHECK(r.front() == doctest::Approx(1.0 / 16));
    CHECK(r[8] == 1.0);
    CHECK(r.back() == doctest::Approx(16.0));
}

TEST_CASE("derived exponents satisfy their defining relations") {
    const DunklParameter p(0.5);
    const auto e = derive_exponents(p, 2.0, 6.0, 3.0, 0.6);
    const double n = p.dim();
    CHECK(std::abs(1 / e.alpha_star - (1 / 3.0 - 0.6 / n)) < 1e-14);
    CHECK(std::abs(1 / e.pbar - (1 / 6.0) * (1 - 3.0 * 0.6 / n)) < 1e-14);
    CHECK(std::abs(1 / e.qbar - (1 / 2.0) * (1 - 3.0 * 0.6 / n)) < 1e-14);
}

TEST_CASE("discrete block norms: direct sums") {
    const DunklParameter p(0.0);
    const auto g = build_grid(p, 4.0, 64, Grading::uniform);
    const auto f = half_cell_indicator(g);
    CHECK(block_norm_discrete(f, 2.0, 2.0, 1.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(block_norm_discrete(f, 1.0, kInf, 1.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(block_norm_discrete(GridFunction::zeros(g), 1.0, 2.0, 0.5) == 0.0);
    CHECK_THROWS_AS(block_norm_discrete(f, 1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(block_norm_discrete(f, 0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("continuous block norms") {
    const auto plan = plan_for(0.0);
    const DunklParameter& p = plan->param();
    const auto g = sample(gaussian(1.0), plan->space());
    for (double e : {1.0, 2.0, 4.0})
        CHECK(block_norm_continuous(g, e, e, 1.0, *plan) / (std::pow(mu_ball(p, 1.0), 1 / e) * lp_norm(g, e)) ==
              doctest::Approx(1.0).epsilon(1e-3));
    CHECK(block_norm_continuous(GridFunction::zeros(plan->space()), 2.0, 3.0, 1.0, *plan) == 0.0);
    CHECK(block_norm_continuous(GridFunction::zeros(plan->space()), kInf, 3.0, 1.0, *plan) == 0.0);

    // Indicator of B_R at q = p = 2: mu(B_r)^{1/2} mu(B_R)^{1/2}.
    double R = 0.0;
    const auto chi = ball_indicator(plan->space(), 1.0, &R);
    for (double r : {0.5, 1.0, 2.0})
        CHECK(block_norm_continuous(chi, 2.0, 2.0, r, *plan) ==
              doctest::Approx(std::sqrt(mu_ball(p, r) * mu_ball(p, R))).epsilon(1e-3));
    CHECK_THROWS_AS(block_norm_continuous(g, 2.0, 2.0, -1.0, *plan), DomainError);
}

TEST_CASE("Fofana norms") {
    const auto plan = plan_for(0.0);
    const auto g = sample(gaussian(1.0), plan->space());
    NormSpec s;
    s.q = s.p = s.alpha = 2.0;
    const auto n = fofana_norm(g, s, *plan);
    CHECK(n.value == doctest::Approx(lp_norm(g, 2.0)).epsilon(2e-3));
    CHECK(n.argmax_r > 0.0);
    CHECK(fofana_norm(GridFunction::zeros(plan->space()), s, *plan).value == 0.0);

    s.q = 1.0;
    s.p = kInf;
    s.alpha = 2.0;
    const auto chi = ball_indicator(plan->space(), 1.0);
    const double cont = fofana_norm(chi, s, *plan).value;
    const double disc = fofana_norm_discrete(chi, s).value;
    CHECK(std::isfinite(cont));
    CHECK(cont / disc <= 8.0);
    CHECK(cont / disc >= 1.0 / 8.0);

    s.q = 3.0;
    s.alpha = 2.0;
    s.p = 4.0;
    CHECK_THROWS_AS(fofana_norm(g, s, *plan), DomainError);
}

TEST_CASE("weak block norms") {
    const auto plan = plan_for(0.0, 512);
    const auto zero = GridFunction::zeros(plan->space());
    CHECK(weak_block_norm(zero, 2.0, 4.0, 1.0, *plan) == 0.0);

    const auto g = sample(gaussian(1.0), plan->space());
    const double one = weak_block_norm(g, 2.0, 4.0, 1.0, *plan);
    const double two = weak_block_norm(g, 2.0, 4.0, 2.0, *plan);
    CHECK(two >= one - 1e-3);

    NormSpec s;
    s.q = 2.0;
    s.p = 4.0;
    s.alpha = 3.0;
    const double base = weak_fofana_norm(g, s, *plan).value;
    CHECK(std::isfinite(base));
    CHECK(base > 0.0);
    CHECK(weak_fofana_norm(g.scaled(3.5), s, *plan).value == doctest::Approx(3.5 * base).epsilon(1e-10));
}

TEST_CASE("weak inner quasi-norm at y = 0 is the plain weak norm") {
    // tau_0 is the identity, so the y = 0 column reduces to ||chi_{B_1}||_{L^{2,inf}}.
    const auto plan = plan_for(0.0, 512);
    double R = 0.0;
    const auto chi = ball_indicator(plan->space(), 1.0, &R);
    CHECK(lorentz_norm(chi, 2.0, kInf) == doctest::Approx(std::sqrt(mu_ball(plan->param(), R))));
}
