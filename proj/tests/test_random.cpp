#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "mixhit/random.hpp"

using namespace mixhit;

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(Philox, KnownAnswers) {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    EXPECT_EQ(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}),
              (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}),
              (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, ReplayIsExact) {
    RandomStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, StreamsDiffer) {
    RandomStream a(42, 1), b(42, 2), c(43, 1);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        same_ab += x == b.next_u64();
        same_ac += x == c.next_u64();
    }
    EXPECT_EQ(same_ab, 0);
    EXPECT_EQ(same_ac, 0);
}

TEST(RandomStream, SubstreamsAreDistinctAndReplayable) {
    RandomStream root(5, 0);
    std::set<std::uint64_t> firsts;
    for (std::uint64_t c = 0; c < 1000; ++c) firsts.insert(root.substream(c).next_u64());
    EXPECT_EQ(firsts.size(), 1000u);
    EXPECT_EQ(root.substream(3).next_u64(), RandomStream(5, 0).substream(3).next_u64());
}

TEST(RandomStream, UniformRanges) {
    RandomStream r(1, 1);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double v = r.uniform_open();
        ASSERT_GT(v, 0.0);
        ASSERT_LT(v, 1.0);
        ASSERT_LT(r.uniform_index(7), 7u);
    }
}

TEST(RandomStream, UniformIndexChiSquare) {
    RandomStream r(9, 3);
    const std::size_t k = 10, n = 200000;
    std::vector<double> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) counts[r.uniform_index(k)] += 1;
    double chi = 0;
    for (double c : counts) chi += (c - double(n) / k) * (c - double(n) / k) / (double(n) / k);
    boost::math::chi_squared dist(k - 1);
    EXPECT_GT(1.0 - boost::math::cdf(dist, chi), 0.001);
}

TEST(RandomStream, GeometricHalfLaw) {
    RandomStream r(11, 0);
    const std::size_t n = 200000;
    std::vector<double> counts(8, 0);
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto z = r.geometric_half();
        ASSERT_GE(z, 1u);
        sum += z;
        counts[std::min<std::size_t>(z, 7) - 1] += 1;
    }
    EXPECT_NEAR(sum / n, 2.0, 0.02);
    double chi = 0;
    for (std::size_t j = 1; j <= 7; ++j) {
        const double p = j < 7 ? std::pow(0.5, double(j)) : std::pow(0.5, 6.0);
        const double e = p * n;
        chi += (counts[j - 1] - e) * (counts[j - 1] - e) / e;
    }
    boost::math::chi_squared dist(6);
    EXPECT_GT(1.0 - boost::math::cdf(dist, chi), 0.001);
}

TEST(RandomStream, NormalMoments) {
    RandomStream r(12, 0);
    double s = 0, s2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(TimeChange, ClockInvariants) {
    TimeChangeStream tc(RandomStream(3, 3));
    EXPECT_EQ(tc.clock(0), 0u);
    std::size_t prev = 0;
    for (std::size_t t = 1; t < 500; ++t) {
        const auto l = tc.clock(t);
        EXPECT_LE(l, t);
        EXPECT_GE(l, prev);
        EXPECT_LE(l, prev + 1);
        prev = l;
    }
    for (std::size_t i = 1; i < 50; ++i) {
        EXPECT_EQ(tc.clock(tc.entrance(i)), i);
        EXPECT_EQ(tc.clock(tc.entrance(i) - 1), i - 1);
    }
}

TEST(TimeChange, ClockIsBinomial) {
    // L(k) ~ Binomial(k, 1/2): mean k/2, variance k/4
    const std::size_t k = 20, n = 50000;
    double s = 0, s2 = 0;
    for (std::size_t r = 0; r < n; ++r) {
        TimeChangeStream tc(RandomStream(77, r));
        const double l = double(tc.clock(k));
        s += l;
        s2 += l * l;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    EXPECT_NEAR(mean, 10.0, 0.05);
    EXPECT_NEAR(var, 5.0, 0.15);
}
