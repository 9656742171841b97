#include "dunkl/report.hpp"

#include "dunkl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dunkl {

namespace {

const char* kind_name(CaseKind k) {
    switch (k) {
    case CaseKind::inequality: return "inequality";
    case CaseKind::identity: return "identity";
    case CaseKind::envelope: return "envelope";
    case CaseKind::finite: return "finite";
    case CaseKind::stability: return "stability";
    case CaseKind::residual: return "residual";
    }
    return "unknown";
}

Case base(std::string id, CaseKind kind, double lhs, double rhs) {
    Case c;
    c.id = std::move(id);
    c.kind = kind;
    c.lhs = lhs;
    c.rhs = rhs;
    c.ratio = safe_ratio(lhs, rhs);
    return c;
}

} // namespace

double safe_ratio(double lhs, double rhs) {
    if (std::isnan(lhs) || std::isnan(rhs)) return std::numeric_limits<double>::quiet_NaN();
    if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return lhs / rhs;
}

Case make_inequality(std::string id, double lhs, double rhs, double bound, double tol) {
    Case c = base(std::move(id), CaseKind::inequality, lhs, rhs);
    c.bound = bound;
    c.tolerance = tol;
    c.pass = std::isfinite(c.ratio) && c.ratio <= bound * (1.0 + tol);
    return c;
}

Case make_identity(std::string id, double lhs, double rhs, double bound, double tol) {
    Case c = base(std::move(id), CaseKind::identity, lhs, rhs);
    c.bound = bound;
    c.tolerance = tol;
    c.pass = std::isfinite(c.ratio) && std::abs(c.ratio - bound) <= bound * tol;
    return c;
}

Case make_envelope(std::string id, double lhs, double rhs, double bound) {
    Case c = base(std::move(id), CaseKind::envelope, lhs, rhs);
    c.bound = bound;
    c.pass = std::isfinite(c.ratio) && c.ratio > 0.0 && c.ratio <= bound && c.ratio >= 1.0 / bound;
    return c;
}

Case make_finite(std::string id, double lhs, double rhs) {
    Case c = base(std::move(id), CaseKind::finite, lhs, rhs);
    c.pass = std::isfinite(lhs) && std::isfinite(rhs) && std::isfinite(c.ratio);
    return c;
}

Case make_stability(std::string id, const std::vector<double>& constants, double factor) {
    double hi = 0.0, lo = std::numeric_limits<double>::infinity();
    bool finite = !constants.empty();
    for (double v : constants) {
        finite = finite && std::isfinite(v);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    Case c = base(std::move(id), CaseKind::stability, hi, lo);
    c.bound = factor;
    c.pass = finite && lo > 0.0 && c.ratio <= factor;
    c.meta["constants"] = nlohmann::json::array();
    for (double v : constants) c.meta["constants"].push_back(number(v));
    return c;
}

Case make_residual(std::string id, double residual, double bound) {
    Case c = base(std::move(id), CaseKind::residual, std::abs(residual), 1.0);
    c.bound = bound;
    c.pass = std::isfinite(residual) && std::abs(residual) <= bound;
    return c;
}

bool VerificationReport::pass() const {
    return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const Case& c) { return c.pass; });
}

double VerificationReport::max_ratio() const {
    double m = 0.0;
    for (const Case& c : cases)
        if (c.kind != CaseKind::residual && c.kind != CaseKind::stability) m = std::max(m, c.ratio);
    return m;
}

double VerificationReport::empirical_constant() const {
    double m = -1.0;
    for (const Case& c : cases)
        if ((c.kind == CaseKind::inequality || c.kind == CaseKind::finite) && c.rhs > 0.0) m = std::max(m, c.ratio);
    if (m < 0.0) throw DataError("empirical constant undefined: every case has rhs = 0");
    return m;
}

nlohmann::json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

nlohmann::json VerificationReport::to_json(bool include_timing) const {
    nlohmann::json j;
    j["suite"] = suite;
    j["k"] = k ? number(*k) : nlohmann::json(nullptr);
    j["grid"] = grid;
    j["config"] = config;
    j["cases"] = nlohmann::json::array();
    for (const Case& c : cases) {
        nlohmann::json e;
        e["id"] = c.id;
        e["kind"] = kind_name(c.kind);
        e["lhs"] = number(c.lhs);
        e["rhs"] = number(c.rhs);
        e["ratio"] = number(c.ratio);
        e["declared_bound"] = c.bound ? number(*c.bound) : nlohmann::json(nullptr);
        e["tolerance"] = number(c.tolerance);
        e["pass"] = c.pass;
        e["meta"] = c.meta;
        j["cases"].push_back(std::move(e));
    }
    nlohmann::json s;
    s["cases"] = cases.size();
    s["failed"] = std::count_if(cases.begin(), cases.end(), [](const Case& c) { return !c.pass; });
    s["max_ratio"] = number(max_ratio());
    double ec = std::numeric_limits<double>::quiet_NaN();
    try {
        ec = empirical_constant();
    } catch (const DataError&) {
    }
    s["empirical_constant"] = std::isnan(ec) ? nlohmann::json(nullptr) : number(ec);
    s["pass"] = pass();
    if (include_timing) s["wall_time"] = wall_time;
    j["summary"] = s;
    j["notes"] = notes;
    return j;
}

} // namespace dunkl
