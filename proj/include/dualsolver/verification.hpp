#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualsolver/schedule.hpp"

namespace dualsolver {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Worst relative deviation of the gamma-branch coefficients from the
// noise/velocity/data integral-form coefficients at gamma in {-1, 0, 1},
// over n_intervals random intervals per schedule kind. The reference side is
// computed through the half log-SNR exponential forms, a different
// arithmetic path from the branch formulas.
double reduction_identity_max_err(std::uint64_t seed, int n_intervals);

// Worst trajectory deviation of mode p1 with kappa = 0 from the DDIM
// baseline on shared grids, over random per-step gamma in [-4, 4] and
// tau in {1e-6, 0.5, 1, 5}, Gaussian and mixture backbones, M in {3, 5, 9}.
double ddim_equivalence_max_err(ScheduleKind kind, std::uint64_t seed);

// Full invariant battery; used by the verify command. All suites must pass
// for a clean build.
std::vector<SuiteResult> run_verification(ScheduleKind kind, std::uint64_t seed);

}  // namespace dualsolver
