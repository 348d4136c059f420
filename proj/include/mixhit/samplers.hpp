#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mixhit/errors.hpp"
#include "mixhit/finite_kernel.hpp"
#include "mixhit/random.hpp"
#include "mixhit/stats.hpp"

namespace mixhit {

struct StateDescriptor {
    std::string domain;  // e.g. "finite", "R^d"
    std::size_t dimension = 0;
};

// One-step sampling interface for a general-state kernel. Replayable: the
// next state depends only on the current state and the stream.
template <class State>
struct MarkovSampler {
    using StepFn = std::function<State(const State&, RandomStream&)>;

    StepFn step;
    StateDescriptor descriptor;

    State operator()(const State& x, RandomStream& rng) const { return step(x, rng); }
};

// Sampler for a finite kernel via inverse-CDF lookup on precomputed row sums.
MarkovSampler<std::size_t> finite_sampler(const FiniteKernel& kernel);
// Draws from a fixed distribution regardless of the current state.
MarkovSampler<std::size_t> distribution_sampler(const std::vector<double>& weights);
std::size_t sample_index(const std::vector<double>& cumulative, RandomStream& rng);

// ---------------------------------------------------------------------------
// Metropolis-Hastings

template <class State>
struct MhKernel {
    std::function<double(const State&)> target_log_density;                 // log rho(x)
    std::function<State(const State&, RandomStream&)> proposal_sampler;     // y ~ q_x
    std::function<double(const State&, const State&)> proposal_log_density;  // log q_x(y)

    // log beta(x, y) = min(0, log rho(y) + log q_y(x) - log rho(x) - log q_x(y)).
    double log_acceptance(const State& x, const State& y) const {
        if constexpr (std::equality_comparable<State>) {
            if (x == y) return 0.0;
        }
        const double log_rho_x = target_log_density(x);
        if (!std::isfinite(log_rho_x)) throw NonFiniteDensity("MH: non-finite log-density at the current state");
        const double log_rho_y = target_log_density(y);
        if (std::isnan(log_rho_y) || log_rho_y == std::numeric_limits<double>::infinity()) {
            throw NonFiniteDensity("MH: non-finite log-density at the proposed state");
        }
        const double log_q_xy = proposal_log_density(x, y);
        const double log_q_yx = proposal_log_density(y, x);
        if (!std::isfinite(log_q_xy) || std::isnan(log_q_yx)) {
            throw NonFiniteDensity("MH: invalid proposal log-density");
        }
        if (log_rho_y == -std::numeric_limits<double>::infinity() ||
            log_q_yx == -std::numeric_limits<double>::infinity()) {
            return -std::numeric_limits<double>::infinity();
        }
        return std::min(0.0, log_rho_y + log_q_yx - log_rho_x - log_q_xy);
    }

    double acceptance(const State& x, const State& y) const { return std::exp(log_acceptance(x, y)); }
};

template <class State>
struct MhChain {
    MhKernel<State> kernel;
    MarkovSampler<State> sampler;
};

// Propose y ~ q_x, accept with probability beta(x, y), otherwise stay.
template <class State>
MhChain<State> make_mh(std::function<double(const State&)> target_log_density,
                       std::function<State(const State&, RandomStream&)> proposal_sampler,
                       std::function<double(const State&, const State&)> proposal_log_density,
                       StateDescriptor descriptor = {"general", 0}) {
    MhKernel<State> kernel{std::move(target_log_density), std::move(proposal_sampler),
                           std::move(proposal_log_density)};
    MarkovSampler<State> sampler{[kernel](const State& x, RandomStream& rng) {
                                     State y = kernel.proposal_sampler(x, rng);
                                     const double log_beta = kernel.log_acceptance(x, y);
                                     if (log_beta >= 0.0) return y;
                                     return std::log(rng.uniform_open()) < log_beta ? y : x;
                                 },
                                 std::move(descriptor)};
    return {std::move(kernel), std::move(sampler)};
}

// Finite-state MH transition matrix from a target and proposal matrix:
// P_xy = Q_xy beta(x, y) for y != x, rejected mass on the diagonal.
FiniteKernel mh_transition_matrix(const std::vector<double>& target, const FiniteKernel& proposal);

// Finite-state MH fixture: target weights and a proposal that moves uniformly
// to one of the other n - 1 states. Matches mh_transition_matrix exactly.
MhChain<std::size_t> make_finite_mh(std::vector<double> target_weights);

struct GammaEstimate {
    double estimate = 0.0;    // min over probes minus the Hoeffding halfwidth
    double min_point = 0.0;   // min over probes of the Monte Carlo mean
    double halfwidth = 0.0;
    std::vector<double> per_probe;
};

// Monte Carlo estimate of gamma = inf_x int q_x(y) beta(x, y) dy on a probe set.
// The min over a finite probe set overestimates the true infimum.
template <class State>
GammaEstimate estimate_gamma(const MhKernel<State>& mh, const std::vector<State>& probes, std::size_t n_mc,
                             std::uint64_t seed, double confidence = 0.99) {
    if (probes.empty()) throw InvalidArgument("estimate_gamma: probe set is empty");
    if (n_mc == 0) throw InvalidArgument("estimate_gamma: n_mc must be positive");
    GammaEstimate out;
    out.per_probe.resize(probes.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t p = 0; p < probes.size(); ++p) {
        RandomStream rng(seed, p);
        double sum = 0.0;
        for (std::size_t i = 0; i < n_mc; ++i) sum += mh.acceptance(probes[p], mh.proposal_sampler(probes[p], rng));
        out.per_probe[p] = sum / static_cast<double>(n_mc);
    }
    out.min_point = *std::min_element(out.per_probe.begin(), out.per_probe.end());
    out.halfwidth = std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n_mc)));
    out.estimate = out.min_point - out.halfwidth;
    return out;
}

// ---------------------------------------------------------------------------
// Random-scan Gibbs

struct GibbsKernel {
    std::size_t dimension = 0;
    // F_{x,i}^{-1}(u): coordinate i resampled from its conditional given x.
    std::function<double(const std::vector<double>&, std::size_t, double)> conditional_inverse_cdf;

    std::vector<double> update(const std::vector<double>& x, std::size_t i, double u) const {
        std::vector<double> y = x;
        y[i] = conditional_inverse_cdf(x, i, u);
        return y;
    }
};

struct GibbsChain {
    GibbsKernel kernel;
    MarkovSampler<std::vector<double>> sampler;
};

GibbsChain make_gibbs(std::size_t dimension,
                      std::function<double(const std::vector<double>&, std::size_t, double)> conditional_inverse_cdf);

// ---------------------------------------------------------------------------
// Time changes as one-step samplers

enum class TimeChangeKind { lazy, skeleton, trace, G };

template <class State>
struct TimeChange {
    TimeChangeKind kind = TimeChangeKind::lazy;
    std::size_t k = 1;                           // skeleton / G
    std::function<bool(const State&)> watched;   // trace
    std::size_t step_cap = 1'000'000;            // trace

    static TimeChange lazy_mode() { return {TimeChangeKind::lazy, 1, {}, 0}; }
    static TimeChange skeleton_mode(std::size_t k) { return {TimeChangeKind::skeleton, k, {}, 0}; }
    static TimeChange G_mode(std::size_t k) { return {TimeChangeKind::G, k, {}, 0}; }
    static TimeChange trace_mode(std::function<bool(const State&)> watched, std::size_t cap = 1'000'000) {
        return {TimeChangeKind::trace, 1, std::move(watched), cap};
    }
};

template <class State>
MarkovSampler<State> apply_time_change(const MarkovSampler<State>& base, const TimeChange<State>& mode) {
    switch (mode.kind) {
        case TimeChangeKind::lazy:
            // X^(L)_1 = X_{L(1)} and L(1) = 1 exactly when zeta_1 = 1.
            return {[base](const State& x, RandomStream& rng) { return rng.geometric_half() == 1 ? base(x, rng) : x; },
                    base.descriptor};
        case TimeChangeKind::skeleton: {
            if (mode.k == 0) throw InvalidArgument("skeleton time change: k must be at least 1");
            const std::size_t k = mode.k;
            return {[base, k](const State& x, RandomStream& rng) {
                        State y = x;
                        for (std::size_t i = 0; i < k; ++i) y = base(y, rng);
                        return y;
                    },
                    base.descriptor};
        }
        case TimeChangeKind::trace: {
            if (!mode.watched) throw InvalidArgument("trace time change: no watched-set indicator");
            const auto watched = mode.watched;
            const std::size_t cap = mode.step_cap;
            return {[base, watched, cap](const State& x, RandomStream& rng) {
                        // From x outside S, eta_0 is the first visit and one step lands at eta_1.
                        State y = x;
                        const int visits_needed = watched(x) ? 1 : 2;
                        int visits = 0;
                        for (std::size_t steps = 0; visits < visits_needed; ++steps) {
                            if (steps >= cap) throw TraceStepCapExceeded("trace time change: excursion exceeded step cap");
                            y = base(y, rng);
                            if (watched(y)) ++visits;
                        }
                        return y;
                    },
                    base.descriptor};
        }
        case TimeChangeKind::G: {
            const auto inner = apply_time_change(base, TimeChange<State>::lazy_mode());
            const auto skel = apply_time_change(inner, TimeChange<State>::skeleton_mode(mode.k));
            return apply_time_change(skel, TimeChange<State>::lazy_mode());
        }
    }
    throw InvalidArgument("apply_time_change: unknown mode");
}

// ---------------------------------------------------------------------------
// Path-level transformations. A Path is a single stateful trajectory.

template <class State>
class Path {
public:
    virtual ~Path() = default;
    virtual const State& current() const = 0;
    virtual void advance() = 0;
    virtual std::size_t time() const = 0;
};

template <class State>
class SamplerPath final : public Path<State> {
public:
    SamplerPath(MarkovSampler<State> sampler, State start, RandomStream rng)
        : sampler_(std::move(sampler)), state_(std::move(start)), rng_(rng) {}

    const State& current() const override { return state_; }
    void advance() override {
        state_ = sampler_(state_, rng_);
        ++time_;
    }
    std::size_t time() const override { return time_; }

private:
    MarkovSampler<State> sampler_;
    State state_;
    RandomStream rng_;
    std::size_t time_ = 0;
};

// Y_t = X_{L(t)}: each element of the inner path repeated zeta_i times.
template <class State>
class LazyPath final : public Path<State> {
public:
    LazyPath(std::unique_ptr<Path<State>> inner, TimeChangeStream clock)
        : inner_(std::move(inner)), clock_(std::move(clock)) {}

    const State& current() const override { return inner_->current(); }
    void advance() override {
        ++time_;
        const std::size_t target = clock_.clock(time_);
        while (inner_->time() < target) inner_->advance();
    }
    std::size_t time() const override { return time_; }

private:
    std::unique_ptr<Path<State>> inner_;
    TimeChangeStream clock_;
    std::size_t time_ = 0;
};

// Y_t = X_{kt}.
template <class State>
class SkeletonPath final : public Path<State> {
public:
    SkeletonPath(std::unique_ptr<Path<State>> inner, std::size_t k) : inner_(std::move(inner)), k_(k) {
        if (k_ == 0) throw InvalidArgument("SkeletonPath: k must be at least 1");
    }

    const State& current() const override { return inner_->current(); }
    void advance() override {
        for (std::size_t i = 0; i < k_; ++i) inner_->advance();
        ++time_;
    }
    std::size_t time() const override { return time_; }

private:
    std::unique_ptr<Path<State>> inner_;
    std::size_t k_;
    std::size_t time_ = 0;
};

// Y_t = X_{eta_t}: eta_0 = first visit to S, eta_{i+1} = next visit after eta_i.
template <class State>
class TracePath final : public Path<State> {
public:
    TracePath(std::unique_ptr<Path<State>> inner, std::function<bool(const State&)> watched,
              std::size_t step_cap = 1'000'000)
        : inner_(std::move(inner)), watched_(std::move(watched)), cap_(step_cap) {
        seek();
        entrance_times_.push_back(inner_->time());
    }

    const State& current() const override { return inner_->current(); }
    void advance() override {
        inner_->advance();
        seek();
        entrance_times_.push_back(inner_->time());
        ++time_;
    }
    std::size_t time() const override { return time_; }
    const std::vector<std::size_t>& entrance_times() const { return entrance_times_; }

private:
    void seek() {
        for (std::size_t steps = 0; !watched_(inner_->current()); ++steps) {
            if (steps >= cap_) throw TraceStepCapExceeded("TracePath: excursion exceeded step cap");
            inner_->advance();
        }
    }

    std::unique_ptr<Path<State>> inner_;
    std::function<bool(const State&)> watched_;
    std::size_t cap_;
    std::size_t time_ = 0;
    std::vector<std::size_t> entrance_times_;
};

// The four-step G sampler: run the chain, repeat each element a geometric
// number of times, take the k-skeleton, repeat each element again.
template <class State>
std::unique_ptr<Path<State>> make_g_path(const MarkovSampler<State>& sampler, State start, std::size_t k,
                                         RandomStream rng) {
    auto base = std::make_unique<SamplerPath<State>>(sampler, std::move(start), rng.substream(0));
    auto inner_lazy = std::make_unique<LazyPath<State>>(std::move(base), TimeChangeStream(rng.substream(1)));
    auto skel = std::make_unique<SkeletonPath<State>>(std::move(inner_lazy), k);
    return std::make_unique<LazyPath<State>>(std::move(skel), TimeChangeStream(rng.substream(2)));
}

// ---------------------------------------------------------------------------
// MH skeleton: the chain of distinct moves with its jump times.

template <class State>
struct SkeletonJump {
    State state;          // Y_t = X_{eta_t}
    std::size_t eta = 0;  // jump time eta_t
    std::size_t holding = 0;  // eta_{t+1} - eta_t, time spent at Y_t
};

template <class State>
class MhSkeleton {
public:
    MhSkeleton(MarkovSampler<State> sampler, State start, RandomStream rng, std::size_t holding_cap = 1'000'000)
        : path_(std::move(sampler), std::move(start), rng), cap_(holding_cap) {}

    // Emits (Y_t, eta_t, holding time) and moves to Y_{t+1}.
    SkeletonJump<State> next() {
        SkeletonJump<State> jump{path_.current(), path_.time(), 0};
        const State here = path_.current();
        do {
            if (path_.time() - jump.eta >= cap_) throw HoldingCapExceeded("MhSkeleton: chain held longer than the cap");
            path_.advance();
        } while (path_.current() == here);
        jump.holding = path_.time() - jump.eta;
        return jump;
    }

private:
    SamplerPath<State> path_;
    std::size_t cap_;
};

// L_lambda(n) = (1 - lambda)^(n-1) lambda for n >= 1: holding time law at a
// state whose move probability is lambda.
double geometric_pmf(double lambda, std::size_t n);

struct RateEstimate {
    double point = 0.0;
    double halfwidth = 0.0;  // Wilson
};

// lambda(x) = P(X_1 != x | X_0 = x).
template <class State>
RateEstimate estimate_move_rate(const MarkovSampler<State>& sampler, const State& x, std::size_t n,
                                RandomStream rng, double confidence = 0.99) {
    if (n == 0) throw InvalidArgument("estimate_move_rate: n must be positive");
    std::size_t moves = 0;
    for (std::size_t i = 0; i < n; ++i) moves += (sampler(x, rng) == x) ? 0 : 1;
    const auto w = wilson_interval(moves, n, confidence);
    return {static_cast<double>(moves) / static_cast<double>(n), w.halfwidth};
}

// ---------------------------------------------------------------------------
// Core sets of the MH skeleton chain.

// Mass that L_lambda assigns to {n >= 1 : member(n)}, evaluated to 1e-15.
double geometric_set_mass(double lambda, const std::function<bool(std::size_t)>& member);

// A = {x : L_{lambda(x)}({n : (x, n) in A'}) >= (1 - delta) alpha}.
template <class State>
std::function<bool(const State&)> core_set(std::function<bool(const State&, std::size_t)> set_indicator,
                                           std::function<double(const State&)> lambda, double delta, double alpha) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("core_set: delta must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha < 0.5)) throw InvalidArgument("core_set: alpha must lie in (0, 1/2)");
    const double bar = (1.0 - delta) * alpha;
    return [set_indicator = std::move(set_indicator), lambda = std::move(lambda), bar](const State& x) {
        const double mass = geometric_set_mass(lambda(x), [&](std::size_t n) { return set_indicator(x, n); });
        return mass >= bar;
    };
}

}  // namespace mixhit
