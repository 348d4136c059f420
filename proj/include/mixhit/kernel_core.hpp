#pragma once

#include <cstddef>
#include <vector>

#include "mixhit/finite_kernel.hpp"
#include "mixhit/prob_vector.hpp"

namespace mixhit {

// d(t) and d-bar(t) for t = 0..horizon.
struct ContractionProfile {
    std::size_t horizon = 0;
    std::vector<double> d_values;
    std::vector<double> dbar_values;
};

// Unique pi with pi P = pi. Solves the dense system (P^T - I) x = 0 with the
// normalization row appended. Throws NonUniqueStationary when the fixed-point
// space has dimension > 1 (singular-value threshold 1e-10 * n).
ProbVector stationary_distribution(const FiniteKernel& kernel);

// Largest |(pi P)_j - pi_j|.
double stationarity_residual(const FiniteKernel& kernel, const ProbVector& pi);

// max_{i,j} |pi_i P_ij - pi_j P_ji| <= tol.
bool check_reversible(const FiniteKernel& kernel, const ProbVector& pi, double tol = 1e-12);

// Additive reversibilization (P + P*) / 2 with P*_ij = pi_j P_ji / pi_i.
FiniteKernel reversibilize(const FiniteKernel& kernel, const ProbVector& pi);

// start * P^t by t successive row-vector products.
ProbVector iterate_distribution(const FiniteKernel& kernel, const ProbVector& start, std::size_t t);

ContractionProfile contraction_profile(const FiniteKernel& kernel, const ProbVector& pi,
                                       std::size_t horizon);

// Building blocks shared with the time computations. `rows` holds one
// distribution per row (typically the rows of P^t).
Matrix multiply_rows(const Matrix& rows, const Matrix& kernel);
double worst_distance_to(const Matrix& rows, const ProbVector& pi);
double worst_pair_distance(const Matrix& rows);

}  // namespace mixhit
