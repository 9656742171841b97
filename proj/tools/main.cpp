// dunkl: command-line front end for the transform, the operators, the norms and
// the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config/domain error,
// 3 data error.
#include "csv_io.hpp"

#include "dunkl/amalgam.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/harness.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/test_functions.hpp"
#include "dunkl/translation.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;
using namespace dunkl;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kData = 3 };

struct Common {
    std::optional<double> k;
    GridConfig grid;
    int threads = 0;
    std::string report;
    std::string out;
    std::string func = "gaussian:1";
    std::string input;  // CSV, overrides --func
    bool timing = false;

    double k_or_zero() const { return k.value_or(0.0); }

    json to_json() const {
        return {{"k", k ? json(*k) : json(nullptr)},
                {"grid_extent", grid.extent},
                {"grid_n", grid.half_cells},
                {"freq_extent", grid.freq_extent},
                {"freq_n", grid.freq_half_cells},
                {"func", input.empty() ? json(func) : json(nullptr)},
                {"input", input.empty() ? json(nullptr) : json(input)}};
    }
};

void add_common(CLI::App* app, Common& c, bool with_func = true) {
    app->add_option("--k", c.k, "Dunkl parameter k >= -1/2 (default 0)");
    app->add_option("--grid-extent", c.grid.extent, "space grid half-width X")->capture_default_str();
    app->add_option("--grid-n", c.grid.half_cells, "space cells per half-line N")->capture_default_str();
    app->add_option("--freq-extent", c.grid.freq_extent, "frequency cutoff Lambda")->capture_default_str();
    app->add_option("--freq-n", c.grid.freq_half_cells, "frequency cells per half-line M")->capture_default_str();
    app->add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
    app->add_option("--report", c.report, "write a JSON report here");
    app->add_option("--out", c.out, "write CSV output here (default stdout)");
    app->add_flag("--timing", c.timing, "include wall time in reports");
    if (with_func) {
        app->add_option("--func", c.func, "builtin function, e.g. gaussian:1, dilate:2:bump:1")->capture_default_str();
        app->add_option("--in", c.input, "CSV input with header x,value or x,re,im");
    }
}

PlanPtr make_plan(const Common& c) { return TransformPlan::make(DunklParameter(c.k_or_zero()), c.grid); }

GridFunction load_function(const Common& c, const std::string& func, const std::string& input, const GridPtr& grid) {
    if (!input.empty()) return io::ingest_csv(input, grid);
    return sample(parse_function(func), grid);
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << j.dump(2) << '\n';
}

template <class Writer>
void emit_csv(const std::string& path, Writer&& w) {
    if (path.empty()) {
        w(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    w(out);
}

json warnings_of(const GridFunction& f) { return f.warnings(); }

// ---------------------------------------------------------------------------

int run_transform(const Common& c) {
    const auto plan = make_plan(c);
    const GridFunction f = load_function(c, c.func, c.input, plan->space());
    const SpectralFunction F = forward(f, *plan);
    const double trunc = truncation_error(F);
    emit_csv(c.out, [&](std::ostream& o) { io::write_spectrum(o, F); });
    std::cerr << fmt::format("frequency truncation (spectral L2 share beyond 0.8 Lambda): {:.3g}\n", trunc);
    if (!c.report.empty())
        write_json(c.report, {{"command", "transform"},
                              {"config", c.to_json()},
                              {"truncation_error", number(trunc)},
                              {"warnings", warnings_of(f)}});
    return kOk;
}

struct ApplyArgs {
    std::string op;
    double y = 0.0;
    double beta = 1.0;
    std::string g = "gaussian:1";
    std::string g_input;
};

int run_apply(const Common& c, const ApplyArgs& a) {
    const auto plan = make_plan(c);
    const GridFunction f = load_function(c, c.func, c.input, plan->space());
    const auto radii = default_maximal_radii();
    std::optional<GridFunction> out;
    if (a.op == "translate") {
        out = translate(f, a.y, *plan);
    } else if (a.op == "convolve") {
        out = convolve(f, load_function(c, a.g, a.g_input, plan->space()), *plan);
    } else if (a.op == "maximal") {
        out = hl_maximal(f, radii, *plan);
    } else if (a.op == "mbeta") {
        out = fractional_maximal(f, a.beta, radii, *plan);
    } else if (a.op == "ibeta") {
        out = riesz_potential_grid(f, a.beta, *plan);
    } else {
        throw ConfigError("unknown op '" + a.op + "'");
    }
    emit_csv(c.out, [&](std::ostream& o) { io::write_function(o, *out); });
    for (const auto& w : out->warnings()) std::cerr << "warning: " << w << '\n';
    if (!c.report.empty()) {
        json cfg = c.to_json();
        cfg["op"] = a.op;
        if (a.op == "translate") cfg["y"] = a.y;
        if (a.op == "mbeta" || a.op == "ibeta") cfg["beta"] = a.beta;
        if (a.op == "convolve") cfg["g"] = a.g_input.empty() ? json(a.g) : json(a.g_input);
        write_json(c.report, {{"command", "apply"}, {"config", cfg}, {"warnings", warnings_of(*out)}});
    }
    return kOk;
}

struct NormArgs {
    std::string kind;
    double p = 2.0;
    double q = 2.0;
    double alpha = 2.0;
    double r = 1.0;
    int stride = 4;
};

int run_norm(const Common& c, const NormArgs& a) {
    const auto plan = make_plan(c);
    const GridFunction f = load_function(c, c.func, c.input, plan->space());
    json res{{"command", "norm"}, {"kind", a.kind}};
    json cfg = c.to_json();
    double value = 0.0;
    std::optional<double> argmax;
    if (a.kind == "lp") {
        value = lp_norm(f, a.p);
        cfg["p"] = number(a.p);
    } else if (a.kind == "lorentz") {
        value = lorentz_norm(f, a.p, a.q);
        cfg["p"] = number(a.p);
        cfg["q"] = number(a.q);
    } else if (a.kind == "amalgam" || a.kind == "amalgam-discrete") {
        value = a.kind == "amalgam" ? block_norm_continuous(f, a.q, a.p, a.r, *plan)
                                    : block_norm_discrete(f, a.q, a.p, a.r);
        cfg["q"] = number(a.q);
        cfg["p"] = number(a.p);
        cfg["r"] = a.r;
    } else if (a.kind == "fofana" || a.kind == "weak-fofana") {
        NormSpec spec;
        spec.q = a.q;
        spec.p = a.p;
        spec.alpha = a.alpha;
        spec.stride = a.stride;
        const NormResult nr = a.kind == "fofana" ? fofana_norm(f, spec, *plan) : weak_fofana_norm(f, spec, *plan);
        value = nr.value;
        argmax = nr.argmax_r;
        cfg["q"] = number(a.q);
        cfg["p"] = number(a.p);
        cfg["alpha"] = number(a.alpha);
        if (a.kind == "weak-fofana") cfg["stride"] = a.stride;
    } else {
        throw ConfigError("unknown norm kind '" + a.kind + "'");
    }
    res["config"] = cfg;
    res["value"] = number(value);
    res["argmax_r"] = argmax ? number(*argmax) : json(nullptr);
    res["warnings"] = warnings_of(f);
    std::cout << (argmax ? fmt::format("{} argmax_r={}\n", value, *argmax) : fmt::format("{}\n", value));
    if (!c.report.empty()) write_json(c.report, res);
    return kOk;
}

struct VerifyArgs {
    std::string suite;
    std::vector<double> dilations;
    std::vector<std::string> family;
    int stride = 4;
};

int run_verify(const Common& c, const VerifyArgs& a) {
    if (!is_suite(a.suite)) throw ConfigError("unknown suite '" + a.suite + "'");
    SuiteConfig cfg;
    cfg.k = c.k;
    cfg.grid = c.grid;
    cfg.dilations = a.dilations;
    for (const auto& tok : a.family) cfg.family.push_back(parse_function(tok));
    cfg.stride = a.stride;
    const VerificationReport rep = run_suite(a.suite, cfg);
    // The thread count is deliberately absent: reports must not depend on it.
    const json j = rep.to_json(c.timing);
    const std::string text = j.dump(2);
    if (!c.report.empty())
        write_json(c.report, j);
    else
        std::cout << text << '\n';

    std::size_t failed = 0;
    for (const auto& cs : rep.cases) failed += cs.pass ? 0 : 1;
    std::cerr << fmt::format("{}: {} cases, {} failed, max ratio {}, {}\n", a.suite, rep.cases.size(), failed,
                             rep.max_ratio(), rep.pass() ? "PASS" : "FAIL");
    return rep.pass() ? kOk : kVerifyFailed;
}

int run_grid_info(const Common& c) {
    const auto plan = make_plan(c);
    const auto& g = *plan->space();
    const auto& fg = *plan->freq();
    const auto w = g.weights();
    const double total = pairwise_sum(w.data(), w.size());
    json j{{"command", "grid-info"},
           {"config", c.to_json()},
           {"space", g.describe()},
           {"frequency", fg.describe()},
           {"k", g.param().k()},
           {"c_k", g.param().c()},
           {"d_k", g.param().d()},
           {"mu_B1", mu_ball(g.param(), 1.0)},
           {"total_mass", total},
           {"exact_total_mass", mu_ball(g.param(), g.extent())},
           {"first_node", g.half_nodes().front()},
           {"last_node", g.half_nodes().back()}};
    std::cout << j.dump(2) << '\n';
    if (!c.report.empty()) write_json(c.report, j);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dunkl transform, generalized translation, amalgam and Fofana norms, fractional operators"};
    app.require_subcommand(1);

    Common c;
    ApplyArgs apply_args;
    NormArgs norm_args;
    VerifyArgs verify_args;

    auto* transform = app.add_subcommand("transform", "forward transform; CSV lambda,re,im");
    add_common(transform, c);

    auto* apply = app.add_subcommand("apply", "apply an operator; CSV x,value or x,re,im");
    add_common(apply, c);
    apply->add_option("--op", apply_args.op, "translate|convolve|maximal|mbeta|ibeta")
        ->required()
        ->check(CLI::IsMember({"translate", "convolve", "maximal", "mbeta", "ibeta"}));
    apply->add_option("--y", apply_args.y, "translation point")->capture_default_str();
    apply->add_option("--beta", apply_args.beta, "order of mbeta/ibeta")->capture_default_str();
    apply->add_option("--g", apply_args.g, "second factor of convolve")->capture_default_str();
    apply->add_option("--g-in", apply_args.g_input, "second factor of convolve from CSV");

    auto* norm = app.add_subcommand("norm", "compute a norm of one function");
    add_common(norm, c);
    norm->add_option("--kind", norm_args.kind, "lp|lorentz|amalgam|amalgam-discrete|fofana|weak-fofana")
        ->required()
        ->check(CLI::IsMember({"lp", "lorentz", "amalgam", "amalgam-discrete", "fofana", "weak-fofana"}));
    norm->add_option("--p", norm_args.p, "outer exponent (inf allowed)")->capture_default_str();
    norm->add_option("--q", norm_args.q, "inner exponent (inf allowed)")->capture_default_str();
    norm->add_option("--alpha", norm_args.alpha, "Fofana exponent")->capture_default_str();
    norm->add_option("--r", norm_args.r, "block radius of amalgam norms")->capture_default_str();
    norm->add_option("--stride", norm_args.stride, "y subsampling of weak block norms")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a verification suite; JSON report");
    add_common(verify, c, false);
    verify->add_option("--suite", verify_args.suite)->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--dilations", verify_args.dilations, "override the dilation family");
    verify->add_option("--family", verify_args.family, "override the base functions");
    verify->add_option("--stride", verify_args.stride, "y subsampling of weak block norms")->capture_default_str();

    auto* grid_info = app.add_subcommand("grid-info", "describe the grids");
    add_common(grid_info, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        set_thread_count(c.threads);
        if (*transform) return run_transform(c);
        if (*apply) return run_apply(c, apply_args);
        if (*norm) return run_norm(c, norm_args);
        if (*verify) return run_verify(c, verify_args);
        return run_grid_info(c);
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
