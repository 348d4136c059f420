#include <gtest/gtest.h>

#include <cmath>

#include "mixhit/errors.hpp"
#include "mixhit/prob_vector.hpp"

using namespace mixhit;

TEST(ProbVector, AcceptsExactDistribution) {
    ProbVector p{0.25, 0.5, 0.25};
    EXPECT_EQ(p.size(), 3u);
    EXPECT_DOUBLE_EQ(p[1], 0.5);
}

TEST(ProbVector, RenormalizesTinyDrift) {
    ProbVector p({0.5 + 4e-10, 0.5});
    EXPECT_NEAR(p[0] + p[1], 1.0, 1e-15);
}

TEST(ProbVector, RejectsBadSum) {
    EXPECT_THROW(ProbVector({0.5, 0.6}), InvalidDistribution);
    EXPECT_THROW(ProbVector({0.0, 0.0}), InvalidDistribution);
}

TEST(ProbVector, RejectsNegativeAndNonFinite) {
    EXPECT_THROW(ProbVector({1.1, -0.1}), InvalidDistribution);
    EXPECT_THROW(ProbVector({std::nan(""), 1.0}), InvalidDistribution);
    EXPECT_THROW(ProbVector({std::numeric_limits<double>::infinity(), 0.0}), InvalidDistribution);
}

TEST(ProbVector, ClampsRoundoffNegatives) {
    ProbVector p({1.0, -1e-16});
    EXPECT_EQ(p[1], 0.0);
}

TEST(ProbVector, PointMassAndUniform) {
    auto d = ProbVector::point_mass(4, 2);
    EXPECT_EQ(d[2], 1.0);
    EXPECT_EQ(d[0], 0.0);
    auto u = ProbVector::uniform(4);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(u[i], 0.25);
}

TEST(ProbVector, MassAndRestriction) {
    ProbVector p{0.25, 0.5, 0.25};
    EXPECT_DOUBLE_EQ(p.mass(StateSet{0, 2}), 0.5);
    auto r = p.restricted(StateSet{0, 1});
    EXPECT_NEAR(r[0], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(r[1], 2.0 / 3.0, 1e-15);
    ProbVector q{1.0, 0.0};
    EXPECT_THROW(q.restricted(StateSet{1}), ZeroMassState);
}

TEST(TvDistance, DisjointPointMasses) { EXPECT_DOUBLE_EQ(tv_distance(ProbVector{1, 0}, ProbVector{0, 1}), 1.0); }

TEST(TvDistance, Identical) {
    ProbVector mu{0.2, 0.3, 0.5};
    EXPECT_EQ(tv_distance(mu, mu), 0.0);
}

TEST(TvDistance, HalfL1) { EXPECT_DOUBLE_EQ(tv_distance(ProbVector{0.5, 0.5}, ProbVector{0.75, 0.25}), 0.25); }

TEST(TvDistance, DimensionMismatch) {
    EXPECT_THROW(tv_distance(ProbVector{0.5, 0.5}, ProbVector{1.0, 0.0, 0.0}), DimensionMismatch);
}

TEST(StateSet, SortedUniqueAndMask) {
    StateSet s{3, 1, 3, 0};
    EXPECT_EQ(s.states(), (std::vector<std::size_t>{0, 1, 3}));
    EXPECT_EQ(s.mask(), 0b1011u);
    EXPECT_EQ(StateSet::from_mask(0b1011), s);
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(2));
    EXPECT_EQ(s.complement(5), (StateSet{2, 4}));
    EXPECT_EQ(to_string(StateSet{0, 2}), "{0,2}");
    EXPECT_EQ(StateSet::all(3), (StateSet{0, 1, 2}));
}
