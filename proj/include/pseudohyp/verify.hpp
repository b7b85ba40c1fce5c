#pragma once

#include "pseudohyp/metric.hpp"
#include "pseudohyp/orbifold.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pseudohyp {

struct CheckRecord {
    std::string name;
    std::string paper_ref;
    std::string status;  // pass | fail | reported
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string details;
};

struct VerifyOptions {
    std::uint64_t seed = 20240611;
    std::optional<double> tol;  // overrides the default 1e-10 checks
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for unknown suites.
std::vector<CheckRecord> run_suite(const std::string& suite, const VerifyOptions& opt);

nlohmann::ordered_json report_json(const std::string& suite, const VerifyOptions& opt,
                                   const std::vector<CheckRecord>& checks);

bool any_failed(const std::vector<CheckRecord>& checks);

// PSEUDOHYP_SEED if set and parseable, otherwise fallback.
std::uint64_t seed_from_env(std::uint64_t fallback);

const std::vector<std::string>& sample_objects();
// CSV text with header; rows ordered by x then y.
std::string sample_csv(const std::string& object, const Rect& r, int nx, int ny);

// "%.17g"
std::string format_double(double v);

struct TableOutput {
    std::string text;
    nlohmann::ordered_json json;
};

// kind: conjugation-{A,B,C,Q,Id} or centralizer
TableOutput make_table(const std::string& kind, int n, const std::string& shape, const std::string& basis);

}  // namespace pseudohyp
