#pragma once

// Property-test and regression suite binding every comparison inequality and
// identity of the library to an executable check with a reported margin.

#include <cstdint>
#include <iosfwd>
#include <string>

namespace robin::harness {

struct SuiteOptions {
    std::string filter;        // substring match on case names; empty = all
    std::uint64_t seed = 2026; // corpus seed; identical seed, identical run
    bool inject_fault = false; // self-test: flips alpha inside one check
    std::string replay_dir = ".";   // failing shapes are serialized here
    std::string replay_file;        // re-run a saved counterexample
    unsigned threads = 0;           // 0 = hardware concurrency
};

/// Runs the property catalog, printing one line per case (fixed order) and a
/// summary with per-case margins. Returns 0 when every selected case passes.
int run_suite(const SuiteOptions& options, std::ostream& out);

}  // namespace robin::harness
