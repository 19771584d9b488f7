// selftest.hpp
// Reduced-trial invariant suite behind `qcorr selftest`: fast sanity
// properties of the whole stack, each named so a failure can be reported
// precisely. The full-size property runs live in the test binaries.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/entanglement.hpp"

namespace qcorr {

struct SelftestOptions {
    std::size_t trials = 20;
    std::uint64_t seed = kDefaultOptimizerSeed;

    // Harness hook: shifts the psi-nonnegativity check by this much so a
    // fault-injection build can prove failures are detected and reported.
    // Stays 0 in every real run.
    double fault_bias = 0.0;
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst offending value or a short confirmation
};

// Runs every property at the reduced trial count; never throws on
// property failure (failures are data), only on internal errors.
std::vector<PropertyResult> run_selftest(const SelftestOptions& opts = {});

}  // namespace qcorr
