#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plexp {

struct CheckResult {
    std::string name;
    double tolerance = 0.0;
    double measured = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string version;
    std::uint64_t seed = 0;
    bool pass = false;
    std::vector<CheckResult> checks;

    std::string to_json() const; // key-sorted, deterministic for a fixed seed
};

// Runs the internal-consistency suite: slow map and averaged diagnostics
// against their linear-restoring closed forms, invariant drift along the
// fast and slow flows, contraction of the determining residual blocks
// under halving of the small parameters, and the uniform-background
// potential solve. The seed drives the sampled phase-space points.
VerifyReport run_verify(std::uint64_t seed);

} // namespace plexp
