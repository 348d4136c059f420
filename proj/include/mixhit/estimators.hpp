#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixhit/errors.hpp"
#include "mixhit/prob_vector.hpp"
#include "mixhit/random.hpp"
#include "mixhit/samplers.hpp"
#include "mixhit/stats.hpp"
#include "mixhit/times.hpp"

namespace mixhit {

inline constexpr double kDefaultConfidence = 0.99;

namespace detail {

// First hitting time of `target` along one trajectory, capped at horizon.
// Returns horizon + 1 when censored.
template <class State>
std::size_t sample_hitting_time(const MarkovSampler<State>& sampler, const std::function<bool(const State&)>& target,
                                State x, std::size_t horizon, HittingConvention convention, RandomStream& rng) {
    if (convention == HittingConvention::inclusive && target(x)) return 0;
    for (std::size_t t = 1; t <= horizon; ++t) {
        x = sampler(x, rng);
        if (target(x)) return t;
    }
    return horizon + 1;
}

}  // namespace detail

// Sample mean of tau_A per start with CLT halfwidth. Censored runs count as
// `horizon` and are reported; the point is then a lower bound.
template <class State>
std::vector<McEstimate> mc_expected_hitting(const MarkovSampler<State>& sampler,
                                            const std::function<bool(const State&)>& target,
                                            const std::vector<State>& starts, std::size_t n, std::size_t horizon,
                                            std::uint64_t seed,
                                            HittingConvention convention = HittingConvention::inclusive,
                                            double confidence = kDefaultConfidence) {
    if (n < 100) throw InvalidArgument("mc_expected_hitting: n must be at least 100");
    if (horizon == 0) throw InvalidArgument("mc_expected_hitting: horizon must be positive");
    const double z = normal_quantile_two_sided(confidence);
    std::vector<McEstimate> out;
    out.reserve(starts.size());
    for (std::size_t s = 0; s < starts.size(); ++s) {
        std::vector<std::size_t> taus(n);
        const RandomStream base(seed, s);
#pragma omp parallel for schedule(static)
        for (std::size_t r = 0; r < n; ++r) {
            RandomStream rng = base.substream(r);
            taus[r] = detail::sample_hitting_time(sampler, target, starts[s], horizon, convention, rng);
        }
        MeanAccumulator acc;
        std::size_t censored = 0;
        for (auto tau : taus) {
            if (tau > horizon) {
                ++censored;
                tau = horizon;
            }
            acc.add(static_cast<double>(tau));
        }
        McEstimate e;
        e.point = acc.mean();
        e.halfwidth = z * std::sqrt(acc.sample_variance() / static_cast<double>(n));
        e.confidence = confidence;
        e.n_samples = n;
        e.n_censored = censored;
        out.push_back(e);
    }
    return out;
}

template <class State>
struct ProbedSet {
    std::function<bool(const State&)> indicator;
    double mass = 0.0;  // stationary mass, supplied analytically
    std::string name;
};

struct LargeHittingEstimate {
    std::optional<std::size_t> time;  // nullopt if the threshold is not reached by the horizon
    std::size_t sets_probed = 0;
    std::size_t worst_set = 0;
    std::size_t worst_start = 0;
};

// Smallest t at which, for every probed set with mass >= alpha and every start,
// the Wilson lower bound on P(tau_A <= t) exceeds the threshold. Estimates the
// large hitting time over the probed family only.
template <class State>
LargeHittingEstimate mc_large_hitting(const MarkovSampler<State>& sampler, const std::vector<ProbedSet<State>>& family,
                                      double alpha, double threshold, const std::vector<State>& starts, std::size_t n,
                                      std::size_t horizon, std::uint64_t seed,
                                      HittingConvention convention = HittingConvention::inclusive,
                                      double confidence = kDefaultConfidence) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("mc_large_hitting: alpha must lie in (0, 1]");
    if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidArgument("mc_large_hitting: threshold must lie in (0, 1)");
    if (n == 0) throw InvalidArgument("mc_large_hitting: n must be positive");
    if (starts.empty()) throw InvalidArgument("mc_large_hitting: no start states");
    // smallest success count whose Wilson lower bound exceeds the threshold
    std::size_t needed = n + 1;
    {
        std::size_t lo = 0, hi = n;
        if (wilson_interval(n, n, confidence).lower > threshold) {
            while (lo < hi) {
                const std::size_t mid = lo + (hi - lo) / 2;
                if (wilson_interval(mid, n, confidence).lower > threshold) hi = mid;
                else lo = mid + 1;
            }
            needed = lo;
        }
    }
    LargeHittingEstimate out;
    std::size_t worst = 0;
    bool reached = true;
    bool first = true;
    for (std::size_t a = 0; a < family.size(); ++a) {
        if (family[a].mass < alpha - kMassSlack) continue;
        ++out.sets_probed;
        for (std::size_t s = 0; s < starts.size(); ++s) {
            std::vector<std::size_t> taus(n);
            const RandomStream base(seed, (static_cast<std::uint64_t>(a) << 32) | s);
#pragma omp parallel for schedule(static)
            for (std::size_t r = 0; r < n; ++r) {
                RandomStream rng = base.substream(r);
                taus[r] = detail::sample_hitting_time(sampler, family[a].indicator, starts[s], horizon, convention, rng);
            }
            if (needed > n) {
                reached = false;
                continue;
            }
            std::nth_element(taus.begin(), taus.begin() + static_cast<std::ptrdiff_t>(needed - 1), taus.end());
            const std::size_t t = taus[needed - 1];
            if (t > horizon) {
                reached = false;
                continue;
            }
            if (first || t > worst) {
                worst = t;
                out.worst_set = a;
                out.worst_start = s;
                first = false;
            }
        }
    }
    if (reached) out.time = worst;
    return out;
}

struct TvEstimate {
    McEstimate tv;              // point = TV, halfwidth = DKW band
    double kolmogorov = 0.0;    // sup_j |F_hat(j) - F(j)|
    double band = 0.0;          // sqrt(ln(2/delta) / (2n))
    std::vector<double> empirical;

    bool kolmogorov_within_band() const { return kolmogorov <= band; }
    bool tv_within_band() const { return tv.point <= band; }
};

// One-step law of a finite sampler from x against an exact reference.
TvEstimate empirical_tv_vs_exact(const MarkovSampler<std::size_t>& sampler, std::size_t x, const ProbVector& exact,
                                 std::size_t n, std::uint64_t seed, double confidence = kDefaultConfidence);

enum class ProbeFlavor { plain, lazy_gibbs, mh };

struct ProbeResult {
    McEstimate frequency;
    double bound = 0.0;
    std::optional<double> intermediate_bound;  // lazy_gibbs, k >= 4
    bool pass = false;                         // point - 3 halfwidth <= bound
};

// plain: t uniform coupon draws, non-coverage, bound d(1 - 1/d)^t.
// lazy_gibbs: index process of the lazy Gibbs chain, bound 2d exp(-k/4d).
// mh: a holding process that moves w.p. gamma per base step, bound (1 - gamma/2)^k.
ProbeResult coupon_and_p_probe(std::size_t d, std::size_t k_or_t, std::size_t n, ProbeFlavor flavor,
                               std::uint64_t seed, double gamma = 0.0, double confidence = kDefaultConfidence);

double gibbs_asf_bound(std::size_t d, std::size_t k);
double gibbs_asf_intermediate_bound(std::size_t d, std::size_t k);
double mh_asf_bound(double gamma, std::size_t k);
double coupon_bound(std::size_t d, std::size_t t);

}  // namespace mixhit
