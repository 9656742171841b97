#include "dunkl/errors.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/test_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dunkl;

namespace {

PlanPtr plan_for(double k, int n = 1024) {
    GridConfig cfg;
    cfg.half_cells = n;
    cfg.freq_half_cells = n;
    return TransformPlan::make(DunklParameter(k), cfg);
}

} // namespace

TEST_CASE("maximal function at the origin") {
    const auto plan = plan_for(0.0);
    const auto radii = default_maximal_radii();
    const double x0[1] = {0.0};
    const auto chi = ball_indicator(plan->space(), 1.0);
    CHECK(hl_maximal_at(chi, radii, x0, *plan)[0] == doctest::Approx(1.0).epsilon(1e-3));
    const auto g = sample(gaussian(1.0), plan->space());
    CHECK(hl_maximal_at(g, radii, x0, *plan)[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(hl_maximal(GridFunction::zeros(plan->space()), radii, *plan).sup_norm() == 0.0);
    CHECK_THROWS_AS(hl_maximal(g, std::vector<double>{}, *plan), ConfigError);
}

TEST_CASE("M is sublinear and nonnegative") {
    const auto plan = plan_for(0.5, 512);
    const auto radii = default_maximal_radii();
    const auto f = sample(gaussian(0.5), plan->space());
    const auto g = sample(dilate(bump(2.0), 1.5), plan->space());
    const auto mf = hl_maximal(f, radii, *plan);
    const auto mg = hl_maximal(g, radii, *plan);
    const auto mfg = hl_maximal(f + g, radii, *plan);
    for (std::size_t i = 0; i < mf.size(); ++i) {
        CHECK(mf[i].real() >= 0.0);
        CHECK(mfg[i].real() <= mf[i].real() + mg[i].real() + 1e-6);
    }
}

TEST_CASE("fractional maximal function") {
    const auto plan = plan_for(0.0);
    const auto radii = default_maximal_radii();
    const double x0[1] = {0.0};
    // The radius grid contains r = 1, inside the snapped ball: value mu(B_1)^{1/2}.
    const auto chi = ball_indicator(plan->space(), 1.0);
    CHECK(fractional_maximal_at(chi, 1.0, radii, x0, *plan)[0] ==
          doctest::Approx(std::sqrt(mu_ball(plan->param(), 1.0))).epsilon(1e-3));
    const auto g = sample(gaussian(1.0), plan->space());
    const auto a = fractional_maximal(g, 1e-6, radii, *plan);
    const auto b = hl_maximal(g, radii, *plan);
    for (std::size_t i = 0; i < a.size(); i += 17) CHECK(std::abs(a[i].real() / b[i].real() - 1.0) <= 1e-4);
    CHECK_THROWS_AS(fractional_maximal(g, 0.0, radii, *plan), DomainError);
    CHECK_THROWS_AS(fractional_maximal(g, 2.0, radii, *plan), DomainError);
}

TEST_CASE("Riesz potential of the unit ball at 0") {
    const auto plan = plan_for(0.0);
    const double x0[1] = {0.0};
    double R = 0.0;
    const auto chi = ball_indicator(plan->space(), 1.0, &R);
    // int_{B_R} |z|^{beta-2k-2} dmu = 2 c_k R^beta / beta.
    const double exact = 2 * plan->param().c() * R;
    CHECK(riesz_potential(chi, 1.0, x0, *plan)[0].real() == doctest::Approx(exact).epsilon(1e-3));
    CHECK(std::abs(riesz_potential(GridFunction::zeros(plan->space()), 1.0, x0, *plan)[0]) == 0.0);
    CHECK_THROWS_AS(riesz_potential(chi, 0.0, x0, *plan), DomainError);
}

TEST_CASE("k = -1/2 Riesz potential against direct classical quadrature") {
    const auto plan = plan_for(-0.5, 2048);
    const auto g = sample(gaussian(1.0), plan->space());
    const std::vector<double> xs = {-1.0, 0.0, 0.7, 2.0};
    const auto got = riesz_potential(g, 0.5, xs, *plan);
    for (std::size_t c = 0; c < xs.size(); ++c) {
        // int exp(-(x+z)^2/2) |z|^{-1/2} dz / sqrt(2 pi), substitution z = s^2 sign.
        const int n = 200000;
        const double S = 4.0, h = S / n;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double s = (i + 0.5) * h;
            const double z = s * s;
            sum += 2 * (std::exp(-(xs[c] + z) * (xs[c] + z) / 2) + std::exp(-(xs[c] - z) * (xs[c] - z) / 2));
        }
        const double ref = sum * h / std::sqrt(2 * std::numbers::pi);
        CHECK(got[c].real() == doctest::Approx(ref).epsilon(1e-4));
    }
}

TEST_CASE("Hedberg split") {
    const auto plan = plan_for(0.0);
    const auto g = sample(gaussian(1.0), plan->space());
    const double xs[1] = {0.6};
    const double full = riesz_potential(g, 0.5, xs, *plan)[0].real();
    const auto s = hedberg_split(g, 0.6, 1.3, 0.5, *plan);
    CHECK(std::abs(s.near + s.far - full) <= 1e-10 * std::abs(full));
    const auto big = hedberg_split(g, 0.6, 100.0, 0.5, *plan);
    CHECK(big.far == 0.0);
    CHECK(big.near == doctest::Approx(full).epsilon(1e-12));
    // Small r: near part ~ kernel mass 2 c_k r^beta / beta times tau_x f(0) = f(x).
    for (double r : {1e-2, 1e-4}) {
        const auto tiny = hedberg_split(g, 0.6, r, 0.5, *plan);
        const double mass = 2 * plan->param().c() * std::sqrt(r) / 0.5;
        CHECK(tiny.near / mass == doctest::Approx(std::exp(-0.18)).epsilon(1e-2));
    }
}

TEST_CASE("chain constants") {
    const DunklParameter p(0.0);
    CHECK(hedberg_near_constant(p, 0.5) ==
          doctest::Approx(p.d() * std::pow(2.0, 1.5) / (1 - std::pow(2.0, -0.5))));
    CHECK(hedberg_far_constant(p, 0.5, 2.0) ==
          doctest::Approx(std::pow(p.d(), 0.5) * 2.0 / (1 - std::pow(2.0, 0.5 - 1.0))));
}

TEST_CASE("pointwise domination M_beta f <= d_k^{beta/(2k+2)-1} I_beta |f|") {
    for (auto [k, beta] : {std::pair{0.0, 0.5}, std::pair{0.5, 1.0}}) {
        const auto plan = plan_for(k);
        const auto f = sample(bump(2.0), plan->space());
        std::vector<double> xs;
        for (double x = -3.0; x <= 3.0; x += 0.5) xs.push_back(x);
        const PointEvaluator ev(f.abs(), xs, *plan);
        const auto radii = default_maximal_radii();
        const double c = std::pow(plan->param().d(), beta / plan->param().dim() - 1.0);
        for (std::size_t i = 0; i < xs.size(); ++i)
            CHECK(ev.fractional_maximal(i, beta, radii) <= (1 + 1e-3) * c * ev.riesz(i, beta));
    }
}
