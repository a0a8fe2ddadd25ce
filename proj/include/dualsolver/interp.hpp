#pragma once

#include <cstddef>
#include <vector>

#include "dualsolver/solver.hpp"

namespace dualsolver {

// Resamples an array of length M to length N by linear interpolation over
// the index range; out[N-1] == arr[M-1] exactly.
std::vector<double> linear_interp(const std::vector<double>& arr, std::size_t N);

// Interpolates both arrays to length N, then blends them with weights given
// by the relative position of N between M and L:
//   w_M = (L-N)/(L-M),  w_L = (N-M)/(L-M),  M < N < L
std::vector<double> averaged_interp(const std::vector<double>& fM,
                                    const std::vector<double>& fL, std::size_t N);

// Builds parameters for an intermediate step count N from parameters trained
// at neighboring counts M < N < L. Corrector arrays are padded to full length
// by repeating the last element before interpolation and truncated back to
// N-1 afterwards. tau arrays are interpolated as stored, i.e. on raw
// pre-softplus values.
SolverParams interp_params(const SolverParams& pM, const SolverParams& pL, std::size_t N);

}  // namespace dualsolver
