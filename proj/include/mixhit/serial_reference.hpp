#pragma once

#include <cstddef>

#include "mixhit/finite_kernel.hpp"
#include "mixhit/kernel_core.hpp"
#include "mixhit/prob_vector.hpp"
#include "mixhit/times.hpp"

// Straightforward single-threaded versions of the parallel kernels. Kept for
// cross-checking and benchmarking; not tuned.
namespace mixhit::serial {

// Each start row is advanced separately with iterate_distribution.
ContractionProfile contraction_profile(const FiniteKernel& kernel, const ProbVector& pi, std::size_t horizon);

// Scans every subset with pi(A) >= alpha, not just the minimal ones.
MaxHittingResult max_hitting_time(const FiniteKernel& kernel, const ProbVector& pi, double alpha,
                                  HittingConvention convention = HittingConvention::inclusive);

// Forward route: tracks the not-yet-hit mass of each start separately.
LargeHittingResult large_hitting_time(const FiniteKernel& kernel, const ProbVector& pi, double alpha,
                                      double threshold = 0.9,
                                      HittingConvention convention = HittingConvention::inclusive,
                                      std::size_t horizon_cap = 10'000'000);

}  // namespace mixhit::serial
