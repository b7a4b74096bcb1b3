#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slc {

struct CheckResult {
    std::string name;
    std::string suite;  // curvature | lift | revolution | linearize | elliptic
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    // A failure that matches a documented impossibility (see the project
    // notes): the check stays red, but the suite treats reality agreeing
    // with the documented analysis as the expected state.
    bool expected_failure = false;
    double runtime_ms = 0.0;
    std::string note;
};

/// Run one suite (or "all") of the verification checks with deterministic
/// seeding. tol_scale scales every tolerance (0 forces failures, the knob
/// the command-line surface exposes for exercising the failure path).
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   double tol_scale = 1.0);

/// True when every check passed or failed exactly as documented.
bool all_pass(const std::vector<CheckResult>& checks);

/// True only when every check passed outright.
bool all_pass_strict(const std::vector<CheckResult>& checks);

/// Machine-readable report. Timings are optional so that reports can be
/// compared byte-for-byte across runs with the same seed.
std::string report_to_json(const std::vector<CheckResult>& checks, std::uint64_t seed,
                           bool include_timings = true);

}  // namespace slc
