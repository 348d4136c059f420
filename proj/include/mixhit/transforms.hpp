#pragma once

#include <cstddef>

#include "mixhit/finite_kernel.hpp"
#include "mixhit/prob_vector.hpp"

namespace mixhit {

// Joint law of (X, Y) with X ~ mu, Y ~ nu.
struct CouplingMatrix {
    Matrix joint;
    ProbVector mu;
    ProbVector nu;

    double off_diagonal_mass() const;
};

// The watched set S for a trace chain.
struct TraceSpec {
    StateSet subset;
    // Pivot threshold for declaring I - P_{S^c S^c} numerically singular.
    double complement_solver_tol = 1e-12;
};

// (P + I) / 2.
FiniteKernel lazy(const FiniteKernel& kernel);

// P^k by repeated squaring; k >= 1.
FiniteKernel skeleton(const FiniteKernel& kernel, std::size_t k);

// Watched-set reduction Q = P_SS + P_SC (I - P_CC)^{-1} P_CS, indexed by the
// sorted members of S. Throws AbsorbingComplement when some state outside S
// cannot reach S, or when the complement block is numerically singular.
FiniteKernel trace_exact(const FiniteKernel& kernel, const TraceSpec& spec);

// lazy(skeleton(lazy(P), k)). Note that skeleton and lazy do not commute in
// general, so the order matters.
FiniteKernel build_G(const FiniteKernel& kernel, std::size_t k);

// diag(w) + (mu - w)(nu - w)^T / (1 - m) with w = min(mu, nu), m = sum(w).
CouplingMatrix maximal_coupling(const ProbVector& mu, const ProbVector& nu);

// (1 - delta) P + delta U with U uniform rows; every row moves by at most delta in TV.
FiniteKernel perturb_within(const FiniteKernel& kernel, double delta);

}  // namespace mixhit
