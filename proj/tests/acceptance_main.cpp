// Acceptance runner: executes every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion. Criterion 14
// (determinism and total runtime) wraps two full runs with the same seed.
#include <chrono>
#include <cstdio>
#include <string>

#include "slc/verify.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 7;
    if (argc > 1) seed = std::stoull(argv[1]);

    auto t0 = std::chrono::steady_clock::now();
    auto first = slc::run_suite("all", seed);
    auto second = slc::run_suite("all", seed);
    double total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 2.0;

    int failures = 0, expected_failures = 0;
    for (auto& c : first) {
        const char* tag = c.pass ? "PASS " : (c.expected_failure ? "XFAIL" : "FAIL ");
        std::printf("%s %s  measured=%.3e tolerance=%.3e (%.0f ms)\n", tag, c.name.c_str(),
                    c.measured, c.tolerance, c.runtime_ms);
        if (!c.note.empty()) std::printf("      %s\n", c.note.c_str());
        if (!c.pass && c.expected_failure) ++expected_failures;
        if (!c.pass && !c.expected_failure) ++failures;
    }

    bool deterministic = slc::report_to_json(first, seed, /*include_timings=*/false) ==
                         slc::report_to_json(second, seed, /*include_timings=*/false);
    bool runtime_ok = total_s < 60.0;
    std::printf("%s 14-determinism-and-runtime  identical_reports=%s runtime=%.1f s (< 60 s)\n",
                deterministic && runtime_ok ? "PASS " : "FAIL ", deterministic ? "yes" : "no",
                total_s);
    if (!(deterministic && runtime_ok)) ++failures;

    std::printf("%d of %zu criteria passed, %d failed, %d expected failures (documented)\n",
                (int)(first.size() + 1) - failures - expected_failures, first.size() + 1, failures,
                expected_failures);
    // Exit cleanly only when reality matches the documented state: every
    // criterion green except those red for the reasons recorded in the
    // project notes.
    return failures == 0 ? 0 : 1;
}
