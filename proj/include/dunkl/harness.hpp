// Verification suites: both sides of each inequality or identity evaluated on
// a family of test functions, collected into a VerificationReport.
#pragma once

#include "dunkl/report.hpp"
#include "dunkl/test_functions.hpp"
#include "dunkl/transform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dunkl {

struct SuiteConfig {
    // Parameter for single-k suites (default 0). Suites whose exponent
    // configurations carry their own k use it as a filter instead.
    std::optional<double> k;
    GridConfig grid;
    // Empty: the suite default ({1/2, 1, 2}, or {1/4, ..., 4} for suites with
    // non-explicit constants).
    std::vector<double> dilations;
    // Empty: {gaussian:1, gaussian:0.25, sindicator:1, bump:2}.
    std::vector<TestFunctionSpec> family;
    int stride = 4;  // y subsampling of weak block norms

    nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg);

// Largest lhs/rhs of the suite's inequality cases.
double empirical_constant(const std::string& name, const SuiteConfig& cfg);

std::vector<TestFunctionSpec> default_family();
std::vector<double> explicit_dilations();  // {1/2, 1, 2}
std::vector<double> stability_dilations(); // {1/4, 1/2, 1, 2, 4}

// Tolerances: smooth data and closed-form multipliers, and data with
// indicator-like edges.
inline constexpr double kSmoothTol = 1e-3;
inline constexpr double kRoughTol = 1e-2;
inline constexpr double kStabilityFactor = 4.0;
inline constexpr double kEnvelopeBound = 8.0;

} // namespace dunkl
