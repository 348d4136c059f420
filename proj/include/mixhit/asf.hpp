#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "mixhit/errors.hpp"
#include "mixhit/random.hpp"
#include "mixhit/samplers.hpp"
#include "mixhit/stats.hpp"

namespace mixhit {

// Draws zeta_1, zeta_2, ... from rng and returns L(k).
std::size_t draw_lazy_clock(std::size_t k, RandomStream& rng);

// Index variables of the lazy Gibbs chain run for k lazy steps: T = L(k) and
// i_0, ..., i_T uniform on {0, ..., d-1}. The first T indices drive the T
// coordinate updates. The good event E is that i_0..i_T cover every coordinate.
struct GibbsIndexDraw {
    std::size_t T = 0;
    std::vector<std::size_t> indices;  // length T + 1
    bool covered = false;
};

GibbsIndexDraw gibbs_index_process(std::size_t d, std::size_t k, RandomStream& rng);

// Reversal w_m(J) = (J[m], ..., J[0]).
std::vector<std::size_t> reversal(const std::vector<std::size_t>& J, std::size_t m);

template <class State>
struct AsfTrajectory {
    State end;          // X_{L(k)}
    std::size_t T = 0;  // L(k)
    bool good = false;  // on E
};

template <class State>
struct AsfDecomposition {
    std::size_t k = 1;
    // one draw of g_L^(k) from x, tagged with the event
    std::function<AsfTrajectory<State>(const State&, RandomStream&)> simulate;
    std::function<bool(const AsfTrajectory<State>&)> event_indicator;
    // probability of the bad event (complement of E), worst start among the probes
    McEstimate p_estimate;
    std::vector<McEstimate> p_per_start;
    MarkovSampler<State> g1_sampler;  // law given E
    MarkovSampler<State> g2_sampler;  // law given not E
    double C_target = 0.0;            // 1 / (p + halfwidth)
    std::size_t rejection_cap = 1'000'000;
};

namespace detail {

template <class State>
MarkovSampler<State> conditional_sampler(
    std::function<AsfTrajectory<State>(const State&, RandomStream&)> simulate, bool want_good, std::size_t cap,
    StateDescriptor descriptor) {
    return {[simulate = std::move(simulate), want_good, cap](const State& x, RandomStream& rng) {
                for (std::size_t tries = 0; tries < cap; ++tries) {
                    auto tr = simulate(x, rng);
                    if (tr.good == want_good) return tr.end;
                }
                throw RejectionCapExceeded("ASF conditional sampler: event never occurred within the cap");
            },
            std::move(descriptor)};
}

template <class State>
void fill_decomposition(AsfDecomposition<State>& out, const std::vector<State>& starts, std::size_t n_mc,
                        std::uint64_t seed, double confidence, const StateDescriptor& descriptor) {
    if (starts.empty()) throw InvalidArgument("asf_decompose: no start states");
    if (n_mc == 0) throw InvalidArgument("asf_decompose: n_mc must be positive");
    out.event_indicator = [](const AsfTrajectory<State>& tr) { return tr.good; };
    out.p_per_start.clear();
    for (std::size_t s = 0; s < starts.size(); ++s) {
        std::vector<unsigned char> bad(n_mc, 0);
        const RandomStream base(seed, s);
#pragma omp parallel for schedule(static)
        for (std::size_t r = 0; r < n_mc; ++r) {
            RandomStream rng = base.substream(r);
            bad[r] = out.simulate(starts[s], rng).good ? 0 : 1;
        }
        std::size_t count = 0;
        for (auto b : bad) count += b;
        out.p_per_start.push_back(frequency_estimate(count, n_mc, confidence));
    }
    out.p_estimate = out.p_per_start.front();
    for (const auto& e : out.p_per_start) {
        if (e.point > out.p_estimate.point) out.p_estimate = e;
    }
    const double top = out.p_estimate.point + out.p_estimate.halfwidth;
    out.C_target = top > 0.0 ? 1.0 / top : std::numeric_limits<double>::infinity();
    out.g1_sampler = conditional_sampler<State>(out.simulate, true, out.rejection_cap, descriptor);
    out.g2_sampler = conditional_sampler<State>(out.simulate, false, out.rejection_cap, descriptor);
}

}  // namespace detail

// Gibbs flavor. p does not depend on the start; a single probe start suffices.
inline AsfDecomposition<std::vector<double>> asf_decompose(const GibbsChain& gibbs, std::size_t k,
                                                           const std::vector<std::vector<double>>& starts,
                                                           std::size_t n_mc, std::uint64_t seed,
                                                           double confidence = 0.99) {
    if (k == 0) throw InvalidArgument("asf_decompose: k must be at least 1");
    AsfDecomposition<std::vector<double>> out;
    out.k = k;
    const GibbsKernel kernel = gibbs.kernel;
    out.simulate = [kernel, k](const std::vector<double>& x, RandomStream& rng) {
        auto draw = gibbs_index_process(kernel.dimension, k, rng);
        std::vector<double> y = x;
        for (std::size_t t = 0; t < draw.T; ++t) y = kernel.update(y, draw.indices[t], rng.uniform_open());
        return AsfTrajectory<std::vector<double>>{std::move(y), draw.T, draw.covered};
    };
    detail::fill_decomposition(out, starts, n_mc, seed, confidence, gibbs.sampler.descriptor);
    return out;
}

// MH flavor. The bad event is X_0 = X_1 = ... = X_{L(k)}.
template <class State>
AsfDecomposition<State> asf_decompose(const MhChain<State>& mh, std::size_t k, const std::vector<State>& starts,
                                      std::size_t n_mc, std::uint64_t seed, double confidence = 0.99) {
    if (k == 0) throw InvalidArgument("asf_decompose: k must be at least 1");
    AsfDecomposition<State> out;
    out.k = k;
    const MarkovSampler<State> step = mh.sampler;
    out.simulate = [step, k](const State& x, RandomStream& rng) {
        const std::size_t T = draw_lazy_clock(k, rng);
        State y = x;
        bool moved = false;
        for (std::size_t t = 0; t < T; ++t) {
            y = step(y, rng);
            if (!(y == x)) moved = true;
        }
        return AsfTrajectory<State>{std::move(y), T, moved};
    };
    detail::fill_decomposition(out, starts, n_mc, seed, confidence, mh.sampler.descriptor);
    return out;
}

}  // namespace mixhit
