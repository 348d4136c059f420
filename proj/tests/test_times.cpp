#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

#include "mixhit/errors.hpp"
#include "mixhit/kernel_core.hpp"
#include "mixhit/serial_reference.hpp"
#include "mixhit/times.hpp"
#include "mixhit/transforms.hpp"
#include "mixhit/zoo.hpp"
#include "oracles.hpp"

using namespace mixhit;

namespace {

FiniteKernel flip() { return FiniteKernel::from_rows({{0, 1}, {1, 0}}); }
const ProbVector kHalf = ProbVector::uniform(2);

std::vector<double> weights(const ProbVector& p) { return {p.weights().begin(), p.weights().end()}; }

}  // namespace

TEST(MixingTime, LazyFlipIsOne) {
    auto r = mixing_time(lazy(flip()), kHalf, 0.25);
    ASSERT_FALSE(r.unmixed());
    EXPECT_EQ(r.value(), 1u);
}

TEST(MixingTime, FlipIsUnmixed) {
    auto r = mixing_time(flip(), kHalf, 0.25, false, 1000);
    EXPECT_TRUE(r.unmixed());
}

TEST(MixingTime, ZeroWhenAlreadyMixed) {
    auto k = FiniteKernel::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    // d(0) = 1/2 <= 0.6
    EXPECT_EQ(mixing_time(k, kHalf, 0.6).value(), 0u);
}

TEST(MixingTime, RejectsNonStationaryPi) {
    auto k = FiniteKernel::from_rows({{0.5, 0.5, 0}, {0.25, 0.5, 0.25}, {0, 0.5, 0.5}});
    EXPECT_THROW(mixing_time(k, ProbVector::uniform(3), 0.25), NonStationaryPi);
}

TEST(MixingTime, RejectsBadEpsilon) {
    EXPECT_THROW(mixing_time(lazy(flip()), kHalf, 0.0), InvalidArgument);
    EXPECT_THROW(mixing_time(lazy(flip()), kHalf, 1.5), InvalidArgument);
}

TEST(MixingTime, MatchesLinearScanOnZoo) {
    for (const auto& c : default_zoo()) {
        const auto m = oracle::from_kernel(c.kernel);
        for (double eps : {0.25, 0.125, 0.05}) {
            for (bool std_ : {false, true}) {
                const auto fast = mixing_time(c.kernel, c.pi, eps, std_, 5000);
                const auto ref = oracle::mixing_time(m, weights(c.pi), eps, std_, 5000);
                ASSERT_EQ(fast.unmixed(), !ref.has_value()) << c.id;
                if (ref) EXPECT_EQ(fast.value(), *ref) << c.id << " eps=" << eps;
            }
        }
    }
}

TEST(MixingTime, ProfileIsAttached) {
    auto r = mixing_time(lazy(flip()), kHalf, 0.25);
    ASSERT_GE(r.profile_used.d_values.size(), 2u);
    EXPECT_DOUBLE_EQ(r.profile_used.d_values[0], 0.5);
}

TEST(Hitting, FlipInclusive) {
    auto h = hitting_moments(flip(), StateSet{1}, 4);
    EXPECT_DOUBLE_EQ(h.expected[0], 1.0);
    EXPECT_DOUBLE_EQ(h.expected[1], 0.0);
}

TEST(Hitting, FlipStrict) {
    auto h = hitting_moments(flip(), StateSet{1}, 4, HittingConvention::strict);
    EXPECT_DOUBLE_EQ(h.expected[0], 1.0);
    EXPECT_DOUBLE_EQ(h.expected[1], 2.0);
    EXPECT_EQ(h.cdf[1][0], 0.0);
    EXPECT_EQ(h.cdf[1][2], 1.0);
}

TEST(Hitting, FourCycle) {
    auto h = hitting_moments(build_zoo_chain("cycle(4)").kernel, StateSet{0}, 1);
    EXPECT_NEAR(h.expected[2], 4.0, 1e-12);  // k(n-k) with k = 2, n = 4
    EXPECT_NEAR(h.expected[1], 3.0, 1e-12);
}

TEST(Hitting, LazyFlipCdf) {
    auto h = hitting_moments(lazy(flip()), StateSet{0}, 20);
    for (std::size_t t = 0; t <= 20; ++t) EXPECT_NEAR(h.cdf[1][t], 1.0 - std::pow(2.0, -double(t)), 1e-15);
}

TEST(Hitting, UnreachableTargetIsInfinite) {
    auto k = FiniteKernel::from_rows({{1, 0, 0}, {0.5, 0, 0.5}, {0, 0, 1}});
    auto h = hitting_moments(k, StateSet{0}, 3);
    EXPECT_TRUE(std::isinf(h.expected[2]));
    EXPECT_TRUE(std::isinf(h.expected[1]));
    EXPECT_EQ(h.expected[0], 0.0);
}

TEST(Hitting, MatchesValueIterationAndForwardCdf) {
    for (std::uint32_t seed = 1; seed <= 8; ++seed) {
        const auto m = oracle::random_stochastic(6, seed, 0.4);
        const std::vector<bool> in{false, true, false, false, true, false};
        const auto h = hitting_moments(oracle::to_kernel(m), StateSet{1, 4}, 30);
        const auto ev = oracle::expected_hitting(m, in);
        const auto cdf = oracle::hitting_cdf(m, in, 30);
        for (std::size_t x = 0; x < 6; ++x) {
            EXPECT_NEAR(h.expected[x], ev[x], 1e-8 * std::max(1.0, ev[x]));
            for (std::size_t t = 0; t <= 30; ++t) EXPECT_NEAR(h.cdf[x][t], cdf[x][t], 1e-13);
        }
    }
}

TEST(MinimalSets, AreMinimalAndFeasible) {
    ProbVector pi{0.1, 0.2, 0.3, 0.4};
    const auto sets = minimal_feasible_sets(pi, 0.45);
    ASSERT_FALSE(sets.empty());
    for (const auto& s : sets) {
        EXPECT_GE(pi.mass(s), 0.45 - 1e-12);
        for (auto x : s) {
            std::vector<std::size_t> rest;
            for (auto y : s)
                if (y != x) rest.push_back(y);
            EXPECT_LT(pi.mass(StateSet(rest)), 0.45 - 1e-12);
        }
    }
}

TEST(MaxHitting, FlipExamples) {
    auto r = max_hitting_time(flip(), kHalf, 0.4);
    EXPECT_DOUBLE_EQ(r.t_H, 1.0);
    EXPECT_EQ(r.witness_set, StateSet{0});
    EXPECT_EQ(r.witness_start, 1u);
    EXPECT_NEAR(max_hitting_time(lazy(flip()), kHalf, 0.4).t_H, 2.0, 1e-12);
    auto full = max_hitting_time(flip(), kHalf, 0.9);
    EXPECT_EQ(full.t_H, 0.0);
    EXPECT_EQ(full.witness_set, (StateSet{0, 1}));
}

TEST(MaxHitting, TooManyStatesAndCandidateFamily) {
    const auto c = build_zoo_chain("cycle(17)");
    EXPECT_THROW(max_hitting_time(c.kernel, c.pi, 0.25), TooManyStates);
    HittingSearchOptions opt;
    opt.candidate_family = {StateSet{0, 1, 2, 3, 4}, StateSet{0}};
    const auto r = max_hitting_time(c.kernel, c.pi, 0.25, opt);
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.sets_examined, 1u);
    EXPECT_GT(r.t_H, 0.0);
}

TEST(MaxHitting, MatchesSerialBruteForceOnZoo) {
    for (const auto& c : default_zoo()) {
        if (c.kernel.size() > 12) continue;
        for (double a : {0.1, 0.25, 0.4}) {
            const auto fast = max_hitting_time(c.kernel, c.pi, a);
            const auto slow = serial::max_hitting_time(c.kernel, c.pi, a);
            EXPECT_NEAR(fast.t_H, slow.t_H, 1e-9 * std::max(1.0, slow.t_H)) << c.id;
        }
    }
}

TEST(LargeHitting, FlipExamples) {
    EXPECT_EQ(large_hitting_time(flip(), kHalf, 0.4).tau_g, 1u);
    EXPECT_EQ(large_hitting_time(lazy(flip()), kHalf, 0.4).tau_g, 4u);
    EXPECT_EQ(large_hitting_time(flip(), kHalf, 0.9).tau_g, 0u);
}

TEST(LargeHitting, NoFiniteTimeWhenCapped) {
    const auto c = build_zoo_chain("cycle(9)");
    HittingSearchOptions opt;
    opt.horizon_cap = 2;
    EXPECT_THROW(large_hitting_time(c.kernel, c.pi, 0.25, opt), NoFiniteTime);
}

TEST(LargeHitting, MatchesSerialForwardRouteOnZoo) {
    for (const auto& c : default_zoo()) {
        if (c.kernel.size() > 12) continue;
        for (double a : {0.1, 0.25, 0.4}) {
            EXPECT_EQ(large_hitting_time(c.kernel, c.pi, a).tau_g, serial::large_hitting_time(c.kernel, c.pi, a).tau_g)
                << c.id << " alpha=" << a;
        }
    }
}

TEST(LargeHitting, ThreadCountIndependent) {
    const auto c = build_zoo_chain("random_reversible(10,3)");
    omp_set_num_threads(1);
    const auto a = large_hitting_time(c.kernel, c.pi, 0.1);
    const auto ha = max_hitting_time(c.kernel, c.pi, 0.1);
    omp_set_num_threads(3);
    const auto b = large_hitting_time(c.kernel, c.pi, 0.1);
    const auto hb = max_hitting_time(c.kernel, c.pi, 0.1);
    omp_set_num_threads(omp_get_num_procs());
    EXPECT_EQ(a.tau_g, b.tau_g);
    EXPECT_EQ(a.witness_set, b.witness_set);
    EXPECT_EQ(ha.t_H, hb.t_H);
    EXPECT_EQ(ha.witness_set, hb.witness_set);
}

TEST(EasyDirection, Constants) {
    EXPECT_EQ(easy_direction_C(0.25), 3u);
    // ceil(ln 10 / -ln 0.875) = ceil(17.24...)
    EXPECT_EQ(easy_direction_k0(0.25), static_cast<std::size_t>(std::ceil(std::log(10.0) / -std::log(0.875))));
    EXPECT_EQ(easy_direction_k0(0.25), 18u);
}

TEST(EasyDirection, PassesOnZoo) {
    for (const auto& c : default_zoo()) {
        const auto cert = easy_direction_certificate(c.kernel, c.pi, 0.25);
        EXPECT_FALSE(cert.vacuous) << c.id;
        EXPECT_TRUE(cert.passed) << c.id;
        EXPECT_LE(cert.lazy_t_H, 2.0 * 18 * 3 * cert.t_L) << c.id;
    }
}

TEST(EasyDirection, VacuousWhenLazyChainUnmixed) {
    const auto c = build_zoo_chain("cycle(11)");
    const auto cert = easy_direction_certificate(c.kernel, c.pi, 0.25, 2);
    EXPECT_TRUE(cert.vacuous);
}

TEST(Equivalence, FlipIsUnmixedWithUndefinedRatio) {
    const auto r = equivalence_report(flip(), 0.25);
    EXPECT_TRUE(r.unmixed);
    EXPECT_FALSE(r.ratio.has_value());
    EXPECT_TRUE(r.maxlarge_ok);
}

TEST(Equivalence, ZooSatisfiesMaxlargeAndMixequivalent) {
    for (const auto& c : default_zoo()) {
        const auto r = equivalence_report(c.kernel, 0.25);
        EXPECT_TRUE(r.maxlarge_ok) << c.id;
        EXPECT_TRUE(r.mixequivalent_ok) << c.id;
        EXPECT_TRUE(r.reversible) << c.id;
    }
}

TEST(Equivalence, WarnsOnNonReversible) {
    const auto k = oracle::to_kernel(oracle::random_stochastic(5, 9));
    const auto r = equivalence_report(k, 0.25);
    EXPECT_FALSE(r.reversible);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(SkeletonIdentity, CeilingLaw) {
    const auto c = build_zoo_chain("random_reversible(8,2)");
    for (double eps : {0.25, 0.125}) {
        const auto base = mixing_time(c.kernel, c.pi, eps, true).value();
        for (std::size_t k = 1; k <= 10; ++k) {
            EXPECT_EQ(mixing_time(skeleton(c.kernel, k), c.pi, eps, true).value(), (base + k - 1) / k);
        }
    }
}

TEST(HittingTail, SubmultiplicativeOnZoo) {
    for (const auto& c : default_zoo()) {
        if (c.kernel.size() > 12) continue;
        const auto tg = large_hitting_time(c.kernel, c.pi, 0.25).tau_g;
        const auto m = oracle::from_kernel(c.kernel);
        for (const auto& a : minimal_feasible_sets(c.pi, 0.25)) {
            const auto cdf = oracle::hitting_cdf(m, a.indicator(c.kernel.size()), 3 * tg);
            for (std::size_t x = 0; x < c.kernel.size(); ++x)
                for (std::size_t k = 1; k <= 3; ++k) EXPECT_LE(1.0 - cdf[x][k * tg], std::pow(0.1, double(k)) + 1e-12) << c.id;
        }
    }
}

TEST(LazyHitting, ExactlyTwiceOriginal) {
    for (const auto& c : default_zoo()) {
        if (c.kernel.size() > 12) continue;
        const double tH = max_hitting_time(c.kernel, c.pi, 0.25).t_H;
        const double lH = max_hitting_time(lazy(c.kernel), c.pi, 0.25).t_H;
        EXPECT_NEAR(lH, 2.0 * tH, 1e-9 * tH) << c.id;
    }
}
