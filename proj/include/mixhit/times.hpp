#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mixhit/finite_kernel.hpp"
#include "mixhit/kernel_core.hpp"
#include "mixhit/prob_vector.hpp"

namespace mixhit {

// inclusive: tau_A = min{t >= 0 : X_t in A}; strict: min{t > 0 : X_t in A}.
enum class HittingConvention { inclusive, strict };

std::string to_string(HittingConvention c);

inline constexpr std::size_t kDefaultTMax = std::size_t{1} << 20;
// d(t) <= eps is tested as d(t) <= eps + kTieSlack.
inline constexpr double kTieSlack = 1e-12;
// pi(A) >= alpha is tested as pi(A) >= alpha - kMassSlack.
inline constexpr double kMassSlack = 1e-12;

struct MixingResult {
    double epsilon = 0.25;
    std::optional<std::size_t> time;  // empty means Unmixed within t_max
    bool standardized = false;
    ContractionProfile profile_used;  // d / d-bar up to min(time or t_max, kProfileCap)

    static constexpr std::size_t kProfileCap = 512;

    bool unmixed() const { return !time.has_value(); }
    std::size_t value() const { return time.value(); }
};

// Smallest t with d(t) <= eps (d-bar when standardized). Doubling bracket then
// binary lifting over the stored powers P^(2^j); relies on monotonicity of d.
MixingResult mixing_time(const FiniteKernel& kernel, const ProbVector& pi, double epsilon = 0.25,
                         bool standardized = false, std::size_t t_max = kDefaultTMax);

struct HittingResult {
    StateSet target;
    std::vector<double> expected;          // E_x[tau_A]; +inf when A is not reached a.s.
    std::vector<std::vector<double>> cdf;  // cdf[x][t] = P_x(tau_A <= t), t = 0..horizon
    HittingConvention convention = HittingConvention::inclusive;
};

HittingResult hitting_moments(const FiniteKernel& kernel, const StateSet& target, std::size_t horizon,
                              HittingConvention convention = HittingConvention::inclusive);

// Expected hitting times only.
std::vector<double> expected_hitting_times(const FiniteKernel& kernel, const std::vector<bool>& target,
                                           HittingConvention convention = HittingConvention::inclusive);

// Inclusion-minimal sets with pi(A) >= alpha. Requires n <= 30.
std::vector<StateSet> minimal_feasible_sets(const ProbVector& pi, double alpha);

struct HittingSearchOptions {
    std::size_t enumeration_cap = 16;
    // Used instead of enumeration when non-empty (members with pi(A) < alpha are
    // skipped). Results are then lower bounds and flagged as such.
    std::vector<StateSet> candidate_family;
    HittingConvention convention = HittingConvention::inclusive;
    double threshold = 0.9;                 // large hitting time only
    std::size_t horizon_cap = 10'000'000;  // large hitting time only
};

struct MaxHittingResult {
    double t_H = 0.0;
    StateSet witness_set;
    std::size_t witness_start = 0;
    bool exact = true;
    std::size_t sets_examined = 0;
};

// t_H(alpha) = sup{E_x[tau_A] : pi(A) >= alpha}, over minimal sets and all starts.
MaxHittingResult max_hitting_time(const FiniteKernel& kernel, const ProbVector& pi, double alpha,
                                  const HittingSearchOptions& options = {});

struct LargeHittingResult {
    std::size_t tau_g = 0;
    StateSet witness_set;
    std::size_t witness_start = 0;
    bool exact = true;
    std::size_t sets_examined = 0;
};

// tau_g(alpha) = min{t : inf_{x, pi(A) >= alpha} P_x(tau_A <= t) > threshold}.
LargeHittingResult large_hitting_time(const FiniteKernel& kernel, const ProbVector& pi, double alpha,
                                      const HittingSearchOptions& options = {});

// Smallest t with min_x P_x(tau_A <= t) > threshold for one set.
// Throws NoFiniteTime if the horizon cap is hit.
std::size_t set_large_hitting_time(const FiniteKernel& kernel, const std::vector<bool>& target,
                                   double threshold, HittingConvention convention, std::size_t horizon_cap,
                                   std::size_t* worst_start = nullptr);

// Constants from the constructive lower bound on t_L:
// C = ceil(-log2(alpha) + 1), k0 = ceil(log(10) / -log(1 - alpha/2)).
std::size_t easy_direction_C(double alpha);
std::size_t easy_direction_k0(double alpha);

struct EasyDirectionCertificate {
    double alpha = 0.0;
    bool vacuous = false;  // t_L unmixed
    std::size_t C = 0;
    std::size_t k0 = 0;
    std::size_t t_L = 0;
    std::size_t T = 0;                    // C * t_L
    double lazy_distance_at_T = 0.0;      // sup_x || g_L(x, T, .) - pi ||
    bool distance_ok = false;             // <= alpha / 2
    double lazy_t_H = 0.0;                // l_H(alpha)
    std::size_t lazy_tau_g = 0;
    double hitting_bound = 0.0;           // 2 * k0 * T
    bool hitting_ok = false;              // l_H <= 2 k0 T
    bool tau_ok = false;                  // tau_g of the lazy chain <= k0 T
    bool passed = false;
};

// Verifies, with explicit constants, that the lazy chain's worst
// distance at T = C * t_L is <= alpha/2 and that l_H(alpha) <= 2 k0 T, where
// t_L is the lazy mixing time at epsilon = 1/4.
EasyDirectionCertificate easy_direction_certificate(const FiniteKernel& kernel, const ProbVector& pi,
                                                    double alpha, std::size_t t_max = kDefaultTMax);

struct EquivalenceReport {
    std::size_t n = 0;
    double alpha = 0.0;
    double epsilon = 0.25;
    MixingResult t_m;
    MixingResult t_bar_m;
    MixingResult t_L;
    double t_H = 0.0;
    std::size_t tau_g = 0;
    StateSet witness_set;
    std::size_t witness_start = 0;
    bool unmixed = false;
    std::optional<double> ratio;  // t_L / max(t_H, 1); empty when unmixed
    bool maxlarge_ok = false;     // 0.1 tau_g <= t_H <= 2 tau_g
    bool mixequivalent_ok = true; // t_m <= t_bar_m <= 2 t_m (when finite)
    bool reversible = true;
    EasyDirectionCertificate certificate;
    std::vector<std::string> warnings;
};

EquivalenceReport equivalence_report(const FiniteKernel& kernel, double alpha, double epsilon = 0.25,
                                     std::size_t t_max = kDefaultTMax);

}  // namespace mixhit
