// Verification reports: one record per checked statement instance.
#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dunkl {

enum class CaseKind {
    inequality,  // lhs <= bound * rhs * (1 + tol)
    identity,    // |lhs/rhs - bound| <= bound * tol
    envelope,    // 1/bound <= lhs/rhs <= bound
    finite,      // no declared constant: ratio must be finite
    stability,   // lhs = max, rhs = min of a constant across dilations; ratio <= bound
    residual,    // lhs = |residual| <= bound
};

struct Case {
    std::string id;
    CaseKind kind = CaseKind::inequality;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    std::optional<double> bound;
    double tolerance = 0.0;
    bool pass = false;
    nlohmann::json meta = nlohmann::json::object();
};

// lhs/rhs with 0/0 = 0 and x/0 = inf for x > 0.
double safe_ratio(double lhs, double rhs);

Case make_inequality(std::string id, double lhs, double rhs, double bound, double tol);
Case make_identity(std::string id, double lhs, double rhs, double bound, double tol);
Case make_envelope(std::string id, double lhs, double rhs, double bound);
Case make_finite(std::string id, double lhs, double rhs);
Case make_stability(std::string id, const std::vector<double>& constants, double factor);
Case make_residual(std::string id, double residual, double bound);

struct VerificationReport {
    std::string suite;
    std::optional<double> k;  // absent when cases span several k
    std::string grid;
    nlohmann::json config = nlohmann::json::object();
    std::vector<Case> cases;
    std::vector<std::string> notes;
    double wall_time = 0.0;

    bool pass() const;
    double max_ratio() const;
    // Max lhs/rhs over inequality and finite cases with rhs > 0.
    double empirical_constant() const;
    nlohmann::json to_json(bool include_timing = false) const;
};

// Non-finite values are written as the strings "inf", "-inf", "nan".
nlohmann::json number(double x);

} // namespace dunkl
