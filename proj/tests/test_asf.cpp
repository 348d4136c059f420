#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "mixhit/asf.hpp"
#include "mixhit/errors.hpp"
#include "mixhit/estimators.hpp"

using namespace mixhit;

namespace {

double norm_inv(double u) { return boost::math::quantile(boost::math::normal_distribution<double>(), u); }

GibbsChain independent_gibbs(std::size_t d) {
    return make_gibbs(d, [](const std::vector<double>&, std::size_t, double u) { return norm_inv(u); });
}

GibbsChain correlated_pair(double rho) {
    const double s = std::sqrt(1 - rho * rho);
    return make_gibbs(2, [rho, s](const std::vector<double>& x, std::size_t i, double u) {
        return rho * x[1 - i] + s * norm_inv(u);
    });
}

// constant target, Gaussian random walk: every proposal is accepted
MhChain<double> always_accept() {
    return make_mh<double>([](const double&) { return 0.0; },
                           [](const double& x, RandomStream& r) { return x + r.normal(); },
                           [](const double& x, const double& y) { return -0.5 * (y - x) * (y - x); });
}

double move_rate(const MhChain<std::size_t>& mh, std::size_t x, std::size_t n) {
    double l = 0;
    for (std::size_t y = 0; y < n; ++y)
        if (y != x) l += mh.kernel.acceptance(x, y) / double(n - 1);
    return l;
}

}  // namespace

TEST(LazyClock, BinomialMean) {
    RandomStream r(3, 3);
    MeanAccumulator acc;
    for (int i = 0; i < 50000; ++i) acc.add(double(draw_lazy_clock(10, r)));
    EXPECT_NEAR(acc.mean(), 5.0, 4 * std::sqrt(2.5 / 50000));
    EXPECT_NEAR(acc.sample_variance(), 2.5, 0.1);
}

TEST(IndexProcess, Shape) {
    RandomStream r(1, 1);
    for (int i = 0; i < 200; ++i) {
        const auto draw = gibbs_index_process(3, 12, r);
        ASSERT_EQ(draw.indices.size(), draw.T + 1);
        std::vector<bool> seen(3, false);
        for (auto j : draw.indices) {
            ASSERT_LT(j, 3u);
            seen[j] = true;
        }
        EXPECT_EQ(draw.covered, seen[0] && seen[1] && seen[2]);
    }
    EXPECT_THROW(gibbs_index_process(0, 3, r), InvalidArgument);
}

TEST(Reversal, Examples) {
    const std::vector<std::size_t> J{4, 7, 1, 9};
    EXPECT_EQ(reversal(J, 3), (std::vector<std::size_t>{9, 1, 7, 4}));
    EXPECT_EQ(reversal(J, 1), (std::vector<std::size_t>{7, 4}));
    EXPECT_EQ(reversal(J, 0), (std::vector<std::size_t>{4}));
    EXPECT_THROW(reversal(J, 4), InvalidArgument);
}

// Given T = m, the index word and its reversal have the same law.
TEST(Reversal, ExchangeableIndexWords) {
    RandomStream r(9, 9);
    const std::size_t m = 2;
    std::map<std::vector<std::size_t>, double> fwd, rev;
    std::size_t kept = 0;
    while (kept < 40000) {
        const auto draw = gibbs_index_process(2, 4, r);
        if (draw.T != m) continue;
        ++kept;
        fwd[draw.indices] += 1;
        rev[reversal(draw.indices, m)] += 1;
    }
    // two-sample chi-square over the 8 words
    double stat = 0;
    std::size_t cells = 0;
    for (const auto& [w, a] : fwd) {
        const double b = rev[w];
        if (a + b > 0) {
            stat += (a - b) * (a - b) / (a + b);
            ++cells;
        }
    }
    EXPECT_EQ(cells, 8u);
    const boost::math::chi_squared_distribution<double> chi(double(cells - 1));
    EXPECT_LT(stat, boost::math::quantile(chi, 0.999));
}

TEST(AsfGibbs, OneDimensionAlwaysGood) {
    const auto dec = asf_decompose(independent_gibbs(1), 3, {{0.0}}, 5000, 1);
    EXPECT_EQ(dec.p_estimate.point, 0.0);
    EXPECT_TRUE(std::isfinite(dec.C_target));
    RandomStream r(1, 2);
    EXPECT_THROW(dec.g2_sampler({0.0}, r), RejectionCapExceeded);
}

TEST(AsfGibbs, ThreeDimensionsUnderBound) {
    const std::size_t d = 3, k = static_cast<std::size_t>(std::ceil(4.0 * d * std::log(10.0 * d)));
    const auto dec = asf_decompose(independent_gibbs(d), k, {{0, 0, 0}}, 100000, 2);
    EXPECT_LE(dec.p_estimate.point, gibbs_asf_bound(d, k));
    EXPECT_NEAR(dec.C_target, 1.0 / (dec.p_estimate.point + dec.p_estimate.halfwidth), 1e-12);
}

TEST(AsfGibbs, StartDoesNotMatter) {
    const auto dec = asf_decompose(correlated_pair(0.5), 6, {{0, 0}, {10, -10}}, 50000, 4);
    ASSERT_EQ(dec.p_per_start.size(), 2u);
    const auto &a = dec.p_per_start[0], &b = dec.p_per_start[1];
    EXPECT_LE(std::abs(a.point - b.point), a.halfwidth + b.halfwidth);
}

// Conditioning on the index event leaves pi invariant.
TEST(AsfGibbs, GoodComponentPreservesTarget) {
    const double rho = 0.5;
    const auto dec = asf_decompose(correlated_pair(rho), 8, {{0, 0}}, 2000, 5);
    RandomStream r(6, 6);
    const std::size_t n = 20000;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = r.normal(), b = rho * a + std::sqrt(1 - rho * rho) * r.normal();
        xs[i] = dec.g1_sampler({a, b}, r)[1];
    }
    std::sort(xs.begin(), xs.end());
    boost::math::normal_distribution<double> nd;
    double ks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = boost::math::cdf(nd, xs[i]);
        ks = std::max({ks, std::abs(f - double(i) / n), std::abs(f - double(i + 1) / n)});
    }
    EXPECT_LT(ks, dkw_epsilon(n, 0.99));
}

TEST(AsfMh, AlwaysAcceptGivesTwoToMinusK) {
    const auto mh = always_accept();
    for (std::size_t k : {1u, 2u, 3u, 5u}) {
        const auto dec = asf_decompose(mh, k, {0.0}, 100000, 10 + k);
        const double exact = std::ldexp(1.0, -static_cast<int>(k));
        EXPECT_LE(std::abs(dec.p_estimate.point - exact), dec.p_estimate.halfwidth) << k;
        EXPECT_NEAR(mh_asf_bound(1.0, k), exact, 1e-15);
    }
}

TEST(AsfMh, FinitePerStartMatchesClosedForm) {
    const std::vector<double> w{1, 2, 4, 8};
    const auto mh = make_finite_mh(w);
    const std::size_t k = 4;
    const auto dec = asf_decompose(mh, k, {0, 1, 2, 3}, 100000, 21);
    double worst = 0;
    for (std::size_t x = 0; x < 4; ++x) {
        // L(k) ~ Binomial(k, 1/2): E[(1 - lambda)^L] = (1 - lambda/2)^k
        const double exact = std::pow(1 - move_rate(mh, x, 4) / 2, double(k));
        worst = std::max(worst, exact);
        EXPECT_LE(std::abs(dec.p_per_start[x].point - exact), dec.p_per_start[x].halfwidth) << x;
    }
    EXPECT_LE(std::abs(dec.p_estimate.point - worst), dec.p_estimate.halfwidth);
}

TEST(AsfMh, BadComponentStaysPut) {
    const auto mh = make_finite_mh({1, 2, 4, 8});
    const auto dec = asf_decompose(mh, 2, {3}, 1000, 3);
    RandomStream r(1, 1);
    for (int i = 0; i < 200; ++i) EXPECT_EQ(dec.g2_sampler(std::size_t{3}, r), 3u);
}

// The unconditional end law is the mixture (1 - p) g1 + p g2, and equals the
// lazy chain run k steps.
TEST(AsfMh, MixtureMatchesLazyPower) {
    const std::vector<double> w{1, 2, 4, 8};
    const auto mh = make_finite_mh(w);
    const std::size_t k = 3, x = 1;
    const FiniteKernel Q(Matrix(Matrix::Constant(4, 4, 1.0 / 3) - Matrix::Identity(4, 4) / 3.0));
    const auto P = mh_transition_matrix(w, Q);
    Matrix L = 0.5 * (P.matrix() + Matrix::Identity(4, 4));
    Matrix Lk = Matrix::Identity(4, 4);
    for (std::size_t i = 0; i < k; ++i) Lk = Lk * L;
    const auto dec = asf_decompose(mh, k, {x}, 1000, 7);
    const std::size_t n = 100000;
    RandomStream r(2, 2);
    std::vector<double> counts(4, 0), mixed(4, 0);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto tr = dec.simulate(x, r);
        counts[tr.end] += 1;
        if (!dec.event_indicator(tr)) ++bad;
    }
    const double p = double(bad) / n;
    for (std::size_t i = 0; i < n; ++i) mixed[r.bernoulli(p) ? dec.g2_sampler(x, r) : dec.g1_sampler(x, r)] += 1;
    double ks1 = 0, ks2 = 0, c = 0, c1 = 0, c2 = 0;
    for (std::size_t j = 0; j < 4; ++j) {
        c += Lk(x, j);
        c1 += counts[j] / n;
        c2 += mixed[j] / n;
        ks1 = std::max(ks1, std::abs(c1 - c));
        ks2 = std::max(ks2, std::abs(c2 - c));
    }
    EXPECT_LT(ks1, dkw_epsilon(n, 0.99));
    EXPECT_LT(ks2, 2 * dkw_epsilon(n, 0.99));
}

TEST(Asf, InvalidArguments) {
    EXPECT_THROW(asf_decompose(independent_gibbs(2), 0, {{0, 0}}, 10, 1), InvalidArgument);
    EXPECT_THROW(asf_decompose(independent_gibbs(2), 3, {}, 10, 1), InvalidArgument);
    EXPECT_THROW(asf_decompose(always_accept(), 3, {0.0}, 0, 1), InvalidArgument);
}
