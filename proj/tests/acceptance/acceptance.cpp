// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// quantities underneath. Exit status is nonzero when any criterion fails.
//
//   acceptance [--cli <path to dunkl>] [--only <n>]...
#include "dunkl/amalgam.hpp"
#include "dunkl/harness.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/test_functions.hpp"
#include "dunkl/translation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace dunkl;

namespace {

const std::array<double, 4> kKs = {-0.25, 0.0, 0.5, 1.5};

// Collects sub-checks of one criterion.
class Criterion {
public:
    Criterion(int id, std::string title, double budget_s) : id_(id), title_(std::move(title)), budget_(budget_s) {}

    void check(bool ok, const std::string& what) {
        ok_ = ok_ && ok;
        lines_.push_back(fmt::format("    {} {}", ok ? "ok  " : "FAIL", what));
    }
    void note(const std::string& what) { lines_.push_back("    note " + what); }

    bool finish(double seconds) {
        if (budget_ > 0.0)
            check(seconds <= budget_, fmt::format("runtime {:.1f} s within {:.0f} s", seconds, budget_));
        else
            note(fmt::format("runtime {:.1f} s", seconds));
        std::cout << fmt::format("criterion {} [{}] {}\n", id_, ok_ ? "PASS" : "FAIL", title_);
        for (const auto& l : lines_) std::cout << l << '\n';
        std::cout.flush();
        return ok_;
    }

private:
    int id_;
    std::string title_;
    double budget_;
    bool ok_ = true;
    std::vector<std::string> lines_;
};

PlanPtr default_plan(double k) { return TransformPlan::make(DunklParameter(k), GridConfig{}); }

double sup_diff(const GridFunction& a, const GridFunction& b) {
    double w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
    return w;
}

// ---------------------------------------------------------------------------

void special_functions(Criterion& c) {
    double closed = 0.0;
    for (double z = -400.0; z <= 400.0; z += 0.00917) {
        closed = std::max(closed, std::abs(normalized_bessel_j(-0.5, z) - std::cos(z)));
        const double sinc = z == 0.0 ? 1.0 : std::sin(z) / z;
        closed = std::max(closed, std::abs(normalized_bessel_j(0.5, z) - sinc));
    }
    c.check(closed <= 1e-10, fmt::format("half-integer closed forms on |z| <= 400: max error {:.3g} <= 1e-10", closed));

    double cross = 0.0;
    for (double nu : {-0.4, 0.0, 0.5, 1.5, 3.0})
        for (double z = 12.0; z <= 18.0; z += 0.001) {
            const double env = std::tgamma(nu + 1.0) * std::pow(2.0 / z, nu) * std::sqrt(2.0 / (std::numbers::pi * z));
            cross = std::max(cross, std::abs(detail::bessel_series(nu, z) - detail::bessel_asymptotic(nu, z)) / env);
        }
    c.check(cross <= 1e-9, fmt::format("series/asymptotic agreement on [12, 18]: {:.3g} <= 1e-9", cross));

    double modulus = 0.0;
    for (double k : {-0.5, -0.25, 0.0, 0.5, 1.5, 3.0}) {
        const DunklParameter p(k);
        for (double t = -500.0; t <= 500.0; t += 0.00731) modulus = std::max(modulus, std::abs(dunkl_kernel_imag(p, t)));
    }
    c.check(modulus <= 1.0 + 1e-9, fmt::format("max |E_k(it)| on [-500, 500]: 1 + {:.3g}", modulus - 1.0));
}

// ---------------------------------------------------------------------------

void transform(Criterion& c) {
    for (double k : kKs) {
        const auto plan = default_plan(k);
        const auto g = sample(gaussian(1.0), plan->space());
        const auto F = forward(g, *plan);
        double fixed = 0.0;
        for (std::size_t i = 0; i < F.size(); ++i) {
            const double l = F.grid().node(i);
            fixed = std::max(fixed, std::abs(F[i] - std::exp(-l * l / 2)));
        }
        c.check(fixed <= 1e-6, fmt::format("k={}: Gaussian fixed point {:.3g} <= 1e-6", k, fixed));

        double planch = 0.0;
        for (const auto& spec : {gaussian(1.0), gaussian(0.25), bump(2.0), dilate(bump(2.0), 2.0)}) {
            const auto f = sample(spec, plan->space());
            const auto Ff = forward(f, *plan);
            std::vector<double> sq(Ff.size());
            for (std::size_t i = 0; i < Ff.size(); ++i) sq[i] = std::norm(Ff[i]) * Ff.grid().weight(i);
            planch = std::max(planch, std::abs(std::sqrt(pairwise_sum(sq)) / lp_norm(f, 2.0) - 1.0));
        }
        c.check(planch <= 1e-5, fmt::format("k={}: Plancherel ratio within 1 +- {:.3g} (<= 1e-5)", k, planch));

        double R = 0.0;
        const auto chi = ball_indicator(plan->space(), 1.0, &R);
        const auto Fc = forward(chi, *plan);
        double ind = 0.0;
        for (std::size_t i = 0; i < Fc.size(); ++i)
            ind = std::max(ind, std::abs(Fc[i] - indicator_transform_closed_form(plan->param(), R, Fc.grid().node(i))));
        ind /= mu_ball(plan->param(), R);
        c.check(ind <= 1e-6, fmt::format("k={}: indicator transform vs mu(B_r) j_(k+1)(r l), relative {:.3g} <= 1e-6 "
                                         "on |l| <= {}",
                                         k, ind, plan->config().freq_extent));
        plan->release_tables();
    }

    // Classical limit: e^{-x^2} cos x has transform (e^{-(l-1)^2/4} + e^{-(l+1)^2/4}) / (2 sqrt 2).
    const auto plan = default_plan(-0.5);
    std::vector<double> v(plan->space()->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = plan->space()->node(i);
        v[i] = std::exp(-x * x) * std::cos(x);
    }
    const auto F = forward(GridFunction(plan->space(), v), *plan);
    double classical = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double l = F.grid().node(i);
        const double want = (std::exp(-(l - 1) * (l - 1) / 4) + std::exp(-(l + 1) * (l + 1) / 4)) / (2 * std::sqrt(2.0));
        classical = std::max(classical, std::abs(F[i] - want));
    }
    c.check(classical <= 1e-8, fmt::format("k=-1/2: agreement with the classical transform {:.3g} <= 1e-8", classical));
}

// ---------------------------------------------------------------------------

void translation(Criterion& c) {
    for (double k : kKs) {
        const auto plan = default_plan(k);
        const auto g = sample(gaussian(1.0), plan->space());
        const auto F = forward(g, *plan);
        const double round_trip = sup_diff(inverse(F, *plan), g);
        const double id_exact = sup_diff(translate(g, 0.0, *plan), g);
        const double id_spectral = sup_diff(apply_multiplier(F, [](double) { return cplx(1.0); }, *plan), g);
        c.check(id_exact == 0.0 && id_spectral <= std::max(round_trip, 1e-12) * 2.0,
                fmt::format("k={}: tau_0 f = f (shortcut exact; spectral route {:.3g}, round trip {:.3g})", k,
                            id_spectral, round_trip));

        double R = 0.0;
        const auto chi = ball_indicator(plan->space(), 1.0, &R);
        // Absolute error. The clamp band adds a little positive mass at large k;
        // the relative figure is reported alongside.
        const double mu1 = mu_ball(plan->param(), R);
        double mass = 0.0;
        for (double y = -3.0; y <= 3.0; y += 0.25) {
            if (y == 0.0) continue;
            const double m = integrate(translate(chi, y, *plan)).real();
            mass = std::max(mass, std::abs(m - mu1));
        }
        c.check(mass <= 1e-5, fmt::format("k={}: mass conservation of tau_y chi_B1, |y| <= 3: {:.3g} <= 1e-5 "
                                          "(relative {:.3g})", k, mass, mass / mu1));

        // Probe points snapped to grid nodes, so that both sides come out of
        // independent grid syntheses: row of tau_x f at y against row of tau_y f at x.
        std::array<std::size_t, 5> idx{};
        std::array<double, 5> probe{};
        {
            const std::array<double, 5> targets = {-2.0, -0.75, 0.3, 1.1, 2.5};
            const auto nodes = plan->space()->nodes();
            for (std::size_t a = 0; a < targets.size(); ++a) {
                const auto it = std::lower_bound(nodes.begin(), nodes.end(), targets[a]);
                idx[a] = static_cast<std::size_t>(it - nodes.begin());
                probe[a] = nodes[idx[a]];
            }
        }
        const Eigen::MatrixXd cols = translate_columns(g, probe, *plan);
        double sym = 0.0;
        for (std::size_t a = 0; a < probe.size(); ++a)
            for (std::size_t b = 0; b < probe.size(); ++b)
                sym = std::max(sym, std::abs(cols(static_cast<Eigen::Index>(idx[b]), static_cast<Eigen::Index>(a)) -
                                             cols(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(b))));
        c.check(sym <= 2.0 * std::max(round_trip, 1e-15),
                fmt::format("k={}: symmetry on the 5x5 probe {:.3g} <= 2 x round trip", k, sym));

        double contraction = 0.0;
        for (const auto& spec : {gaussian(1.0), smoothed_indicator(1.0), bump(2.0)}) {
            const auto f = sample(spec, plan->space());
            for (double y : {-3.0, -1.0, 0.5, 2.0, 3.0}) {
                const auto t = translate(f, y, *plan);
                for (double p : {1.0, 2.0, kInf}) contraction = std::max(contraction, lp_norm(t, p) / lp_norm(f, p));
            }
        }
        c.check(contraction <= 4.0 * (1 + 1e-4),
                fmt::format("k={}: max ||tau_y f||_p / ||f||_p = {:.4f} <= 4(1+1e-4)", k, contraction));
        plan->release_tables();
    }

    const auto plan = default_plan(-0.5);
    const auto g = sample(gaussian(1.0), plan->space());
    double shift = 0.0;
    for (double y : {-2.0, 1.0, 2.5}) {
        const auto t = translate(g, y, *plan);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double x = plan->space()->node(i) + y;
            shift = std::max(shift, std::abs(t[i] - std::exp(-x * x / 2)));
        }
    }
    c.check(shift <= 1e-6, fmt::format("k=-1/2: classical shift {:.3g} <= 1e-6", shift));
}

// ---------------------------------------------------------------------------

std::string case_summary(const VerificationReport& r) {
    std::size_t failed = 0;
    std::string worst;
    for (const auto& cs : r.cases)
        if (!cs.pass) {
            if (failed == 0) worst = fmt::format("; first failure {} ratio {}", cs.id, cs.ratio);
            ++failed;
        }
    return fmt::format("{} cases, {} failed, max ratio {:.6g}{}", r.cases.size(), failed, r.max_ratio(), worst);
}

void explicit_suites(Criterion& c) {
    for (const char* suite : {"young", "oneil", "holder_amalgam", "inclusion", "identity_pp", "interpolation",
                              "weak_embed"})
        for (double k : kKs) {
            SuiteConfig cfg;
            cfg.k = k;
            const auto r = run_suite(suite, cfg);
            c.check(r.pass(), fmt::format("{} k={}: {}", suite, k, case_summary(r)));
        }
}

// ---------------------------------------------------------------------------

std::pair<double, double> envelope(const VerificationReport& r) {
    double lo = kInf, hi = 0.0;
    for (const auto& cs : r.cases)
        if (cs.kind == CaseKind::envelope) {
            lo = std::min(lo, cs.ratio);
            hi = std::max(hi, cs.ratio);
        }
    return {lo, hi};
}

void equivalence(Criterion& c) {
    for (double k : kKs) {
        SuiteConfig base;
        base.k = k;
        SuiteConfig fine = base;
        fine.grid.half_cells *= 2;
        fine.grid.freq_half_cells *= 2;
        const auto a = run_suite("equivalence", base);
        const auto b = run_suite("equivalence", fine);
        const auto [lo, hi] = envelope(a);
        const auto [lo2, hi2] = envelope(b);
        c.check(lo >= 1.0 / kEnvelopeBound && hi <= kEnvelopeBound,
                fmt::format("k={}: continuous/discrete envelope [{:.4g}, {:.4g}] within [1/8, 8]", k, lo, hi));
        c.check(lo2 >= lo * (1 - 1e-3) && hi2 <= hi * (1 + 1e-3),
                fmt::format("k={}: envelope at doubled resolution [{:.4g}, {:.4g}] does not widen", k, lo2, hi2));
    }
}

// ---------------------------------------------------------------------------

void operators(Criterion& c) {
    const auto plan = default_plan(0.0);
    // chi_B1 is materialized with its radius snapped to a cell boundary R; the
    // closed forms are those of chi_{B_R}, with R added to the radius grid.
    double R = 0.0;
    const auto chi = ball_indicator(plan->space(), 1.0, &R);
    auto radii = default_maximal_radii();
    radii.push_back(R);
    std::sort(radii.begin(), radii.end());
    const double x0[1] = {0.0};
    c.note(fmt::format("snapped indicator radius R = {:.6f}", R));
    const double m = hl_maximal_at(chi, radii, x0, *plan)[0];
    c.check(std::abs(m - 1.0) <= 1e-3, fmt::format("k=0: M chi_B1(0) = {:.6f} = 1 +- 1e-3", m));
    for (double beta : {0.5, 1.0}) {
        const double mb = fractional_maximal_at(chi, beta, radii, x0, *plan)[0];
        const double want = std::pow(mu_ball(plan->param(), R), beta / plan->param().dim());
        c.check(std::abs(mb - want) <= 1e-3,
                fmt::format("k=0: M_{} chi_B1(0) = {:.6f}, mu(B_R)^(beta/(2k+2)) = {:.6f} +- 1e-3 (unsnapped {:.6f})",
                            beta, mb, want, std::pow(mu_ball(plan->param(), 1.0), beta / plan->param().dim())));
    }
    // At k=0, I_1 chi_{B_R}(0) = R.
    const double i1 = riesz_potential(chi, 1.0, x0, *plan)[0].real();
    c.check(std::abs(i1 - R) <= 1e-3, fmt::format("k=0: I_1 chi_B1(0) = {:.6f} = R +- 1e-3 (|I_1 - 1| = {:.2g})", i1,
                                                  std::abs(i1 - 1.0)));
    plan->release_tables();

    const auto r = run_suite("hedberg", SuiteConfig{});
    c.check(r.pass(), "hedberg (domination, A-bound, B-bound at 129 nodes): " + case_summary(r));
    for (const char* part : {"/domination/", "/near/", "/far/"}) {
        double worst = 0.0;
        for (const auto& cs : r.cases)
            if (cs.id.find(part) != std::string::npos) worst = std::max(worst, cs.ratio);
        c.note(fmt::format("{}: worst lhs/(constant x rhs) over all nodes and members {:.6g}", part, worst));
    }
}

// ---------------------------------------------------------------------------

void theorems(Criterion& c) {
    for (const char* suite : {"theorem11", "theorem12", "corollary13", "corollary14"}) {
        const auto r = run_suite(suite, SuiteConfig{});
        c.check(r.pass(), fmt::format("{}: {}", suite, case_summary(r)));
        for (const auto& cs : r.cases)
            if (cs.kind == CaseKind::stability) c.note(fmt::format("{}: dilation spread {:.4f}", cs.id, cs.ratio));
    }
}

// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism(Criterion& c, const std::string& cli) {
    if (cli.empty()) {
        c.check(false, "no --cli given");
        return;
    }
    const auto dir = std::filesystem::temp_directory_path() / fmt::format("dunkl_accept_{}", ::getpid());
    std::filesystem::create_directories(dir);
    c.note("grid N = M = 512 (thread-count independence does not depend on the grid size)");
    for (const auto& suite : suite_names()) {
        std::array<std::string, 2> text;
        std::array<int, 2> rc{};
        for (int t = 0; t < 2; ++t) {
            const auto out = dir / fmt::format("{}_{}.json", suite, t);
            const std::string cmd =
                fmt::format("\"{}\" verify --suite {} --grid-n 512 --freq-n 512 --threads {} --report \"{}\" 2>/dev/null",
                            cli, suite, t == 0 ? 1 : 4, out.string());
            const int status = std::system(cmd.c_str());
            rc[t] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            text[t] = slurp(out);
        }
        const bool ok = !text[0].empty() && text[0] == text[1] && rc[0] == rc[1] && (rc[0] == 0 || rc[0] == 1);
        c.check(ok, fmt::format("{}: --threads 1 and --threads 4 reports identical ({} bytes, exit {} / {})", suite,
                                text[0].size(), rc[0], rc[1]));
    }
    std::filesystem::remove_all(dir);
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc) cli = argv[++i];
        else if (a == "--only" && i + 1 < argc) only.insert(std::atoi(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--cli <dunkl>] [--only <n>]...\n";
            return 2;
        }
    }

    const GridConfig g;
    std::cout << fmt::format("default grids: X={} N={} Lambda={} M={}; k in {{-0.25, 0, 0.5, 1.5}}\n", g.extent,
                             g.half_cells, g.freq_extent, g.freq_half_cells);

    struct Entry {
        int id;
        const char* title;
        double budget;
        std::function<void(Criterion&)> run;
    };
    const std::vector<Entry> entries = {
        {1, "special functions", 5, special_functions},
        {2, "transform accuracy", 60, transform},
        {3, "generalized translation", 120, translation},
        {4, "inequality suites with explicit constants", 600, explicit_suites},
        {5, "discrete/continuous amalgam equivalence", 300, equivalence},
        {6, "maximal, fractional maximal, fractional integral, Hedberg chain", 600, operators},
        {7, "theorems and corollaries: finiteness, exponents, dilation stability", 1200, theorems},
        {8, "determinism across thread counts", 0, [&](Criterion& c) { determinism(c, cli); }},
    };

    int failed = 0;
    for (const auto& e : entries) {
        if (!only.empty() && !only.contains(e.id)) continue;
        Criterion c(e.id, e.title, e.budget);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.run(c);
        } catch (const std::exception& ex) {
            c.check(false, std::string("exception: ") + ex.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!c.finish(s)) ++failed;
    }
    std::cout << fmt::format("{} criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
