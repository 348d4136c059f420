#include "mixhit/estimators.hpp"

#include <cmath>

#include "mixhit/asf.hpp"

namespace mixhit {

TvEstimate empirical_tv_vs_exact(const MarkovSampler<std::size_t>& sampler, std::size_t x, const ProbVector& exact,
                                 std::size_t n, std::uint64_t seed, double confidence) {
    if (n == 0) throw InvalidArgument("empirical_tv_vs_exact: n must be positive");
    const std::size_t m = exact.size();
    std::vector<std::size_t> draws(n);
    const RandomStream base(seed, x);
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < n; ++r) {
        RandomStream rng = base.substream(r);
        draws[r] = sampler(x, rng);
    }
    std::vector<std::size_t> counts(m, 0);
    for (auto y : draws) {
        if (y >= m) throw DimensionMismatch("empirical_tv_vs_exact: sampled state outside the reference support");
        ++counts[y];
    }
    TvEstimate out;
    out.empirical.resize(m);
    double l1 = 0.0, cdf_hat = 0.0, cdf = 0.0, ks = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        out.empirical[j] = static_cast<double>(counts[j]) / static_cast<double>(n);
        l1 += std::abs(out.empirical[j] - exact[j]);
        cdf_hat += out.empirical[j];
        cdf += exact[j];
        ks = std::max(ks, std::abs(cdf_hat - cdf));
    }
    out.band = dkw_epsilon(n, confidence);
    out.kolmogorov = ks;
    out.tv.point = 0.5 * l1;
    out.tv.halfwidth = out.band;
    out.tv.confidence = confidence;
    out.tv.n_samples = n;
    return out;
}

double gibbs_asf_bound(std::size_t d, std::size_t k) {
    const double dd = static_cast<double>(d);
    return 2.0 * dd * std::exp(-static_cast<double>(k) / (4.0 * dd));
}

double gibbs_asf_intermediate_bound(std::size_t d, std::size_t k) {
    const double dd = static_cast<double>(d);
    const double kk = static_cast<double>(k);
    return dd * std::pow(1.0 - 1.0 / dd, kk / 4.0) + std::exp(-kk * kk / 4.0);
}

double mh_asf_bound(double gamma, std::size_t k) { return std::pow(1.0 - gamma / 2.0, static_cast<double>(k)); }

double coupon_bound(std::size_t d, std::size_t t) {
    const double dd = static_cast<double>(d);
    return dd * std::pow(1.0 - 1.0 / dd, static_cast<double>(t));
}

ProbeResult coupon_and_p_probe(std::size_t d, std::size_t k_or_t, std::size_t n, ProbeFlavor flavor,
                               std::uint64_t seed, double gamma, double confidence) {
    if (d == 0) throw InvalidArgument("coupon_and_p_probe: d must be at least 1");
    if (n < 1000) throw InvalidArgument("coupon_and_p_probe: n must be at least 1000");
    if (flavor == ProbeFlavor::mh && !(gamma > 0.0 && gamma <= 1.0)) {
        throw InvalidArgument("coupon_and_p_probe: gamma must lie in (0, 1]");
    }
    std::vector<unsigned char> bad(n, 0);
    const RandomStream base(seed, static_cast<std::uint64_t>(flavor));
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < n; ++r) {
        RandomStream rng = base.substream(r);
        switch (flavor) {
            case ProbeFlavor::plain: {
                std::vector<bool> seen(d, false);
                std::size_t distinct = 0;
                for (std::size_t t = 0; t < k_or_t; ++t) {
                    const auto i = rng.uniform_index(d);
                    if (!seen[i]) {
                        seen[i] = true;
                        ++distinct;
                    }
                }
                bad[r] = distinct < d;
                break;
            }
            case ProbeFlavor::lazy_gibbs:
                bad[r] = !gibbs_index_process(d, k_or_t, rng).covered;
                break;
            case ProbeFlavor::mh: {
                const std::size_t T = draw_lazy_clock(k_or_t, rng);
                bool moved = false;
                for (std::size_t t = 0; t < T && !moved; ++t) moved = rng.bernoulli(gamma);
                bad[r] = !moved;
                break;
            }
        }
    }
    std::size_t count = 0;
    for (auto b : bad) count += b;
    ProbeResult out;
    out.frequency = frequency_estimate(count, n, confidence);
    switch (flavor) {
        case ProbeFlavor::plain: out.bound = coupon_bound(d, k_or_t); break;
        case ProbeFlavor::lazy_gibbs:
            out.bound = gibbs_asf_bound(d, k_or_t);
            if (k_or_t >= 4) out.intermediate_bound = gibbs_asf_intermediate_bound(d, k_or_t);
            break;
        case ProbeFlavor::mh: out.bound = mh_asf_bound(gamma, k_or_t); break;
    }
    out.pass = out.frequency.point - 3.0 * out.frequency.halfwidth <= out.bound;
    return out;
}

}  // namespace mixhit
