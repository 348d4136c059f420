#include "mixhit/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mixhit/kernel_core.hpp"

namespace mixhit {

namespace {

std::vector<double> cumulative_of(const std::vector<double>& w) {
    std::vector<double> c(w.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(w[i] >= 0.0) || !std::isfinite(w[i])) throw InvalidDistribution("sampler: weights must be finite and non-negative");
        acc += w[i];
        c[i] = acc;
    }
    if (!(acc > 0.0)) throw InvalidDistribution("sampler: weights sum to zero");
    for (auto& x : c) x /= acc;
    return c;
}

}  // namespace

std::size_t sample_index(const std::vector<double>& cumulative, RandomStream& rng) {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
        // round-off at the top: take the last state with positive mass
        std::size_t i = cumulative.size() - 1;
        while (i > 0 && cumulative[i] == cumulative[i - 1]) --i;
        return i;
    }
    return static_cast<std::size_t>(it - cumulative.begin());
}

MarkovSampler<std::size_t> finite_sampler(const FiniteKernel& kernel) {
    auto table = std::make_shared<std::vector<std::vector<double>>>();
    table->reserve(kernel.size());
    for (std::size_t i = 0; i < kernel.size(); ++i) table->push_back(cumulative_of(kernel.row(i)));
    const std::size_t n = kernel.size();
    return {[table, n](const std::size_t& x, RandomStream& rng) {
                if (x >= n) throw InvalidArgument("finite_sampler: state out of range");
                return sample_index((*table)[x], rng);
            },
            {"finite", n}};
}

MarkovSampler<std::size_t> distribution_sampler(const std::vector<double>& weights) {
    auto cum = std::make_shared<std::vector<double>>(cumulative_of(weights));
    return {[cum](const std::size_t&, RandomStream& rng) { return sample_index(*cum, rng); }, {"finite", weights.size()}};
}

FiniteKernel mh_transition_matrix(const std::vector<double>& target, const FiniteKernel& proposal) {
    const std::size_t n = proposal.size();
    if (target.size() != n) throw DimensionMismatch("mh_transition_matrix: target and proposal sizes differ");
    for (double w : target) {
        if (!(w > 0.0) || !std::isfinite(w)) throw NonFiniteDensity("mh_transition_matrix: target must be positive and finite");
    }
    Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x) {
        double moved = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            const double qxy = proposal(x, y);
            if (qxy == 0.0) continue;
            const double beta = std::min(1.0, target[y] * proposal(y, x) / (target[x] * qxy));
            p(x, y) = qxy * beta;
            moved += p(x, y);
        }
        p(x, x) = 1.0 - moved;
    }
    double total = 0.0;
    for (double w : target) total += w;
    std::vector<double> pi(target);
    for (auto& w : pi) w /= total;
    return FiniteKernel(std::move(p), proposal.labels(), ProbVector(pi));
}

MhChain<std::size_t> make_finite_mh(std::vector<double> target_weights) {
    const std::size_t n = target_weights.size();
    if (n < 2) throw InvalidArgument("make_finite_mh: need at least two states");
    auto logw = std::make_shared<std::vector<double>>(n);
    for (std::size_t i = 0; i < n; ++i) (*logw)[i] = std::log(target_weights[i]);
    const double log_q = -std::log(static_cast<double>(n - 1));
    return make_mh<std::size_t>(
        [logw](const std::size_t& x) { return (*logw)[x]; },
        [n](const std::size_t& x, RandomStream& rng) {
            const std::size_t j = rng.uniform_index(n - 1);
            return j >= x ? j + 1 : j;
        },
        [log_q](const std::size_t& x, const std::size_t& y) {
            return x == y ? -std::numeric_limits<double>::infinity() : log_q;
        },
        {"finite", n});
}

GibbsChain make_gibbs(std::size_t dimension,
                      std::function<double(const std::vector<double>&, std::size_t, double)> conditional_inverse_cdf) {
    if (dimension == 0) throw InvalidArgument("make_gibbs: dimension must be positive");
    GibbsKernel kernel{dimension, std::move(conditional_inverse_cdf)};
    MarkovSampler<std::vector<double>> sampler{[kernel](const std::vector<double>& x, RandomStream& rng) {
                                                   if (x.size() != kernel.dimension) {
                                                       throw DimensionMismatch("Gibbs: state has the wrong dimension");
                                                   }
                                                   const std::size_t i = rng.uniform_index(kernel.dimension);
                                                   const double u = rng.uniform_open();
                                                   return kernel.update(x, i, u);
                                               },
                                               {"R^d", dimension}};
    return {std::move(kernel), std::move(sampler)};
}

double geometric_pmf(double lambda, std::size_t n) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("geometric_pmf: lambda must lie in [0, 1]");
    if (n == 0) return 0.0;
    return std::pow(1.0 - lambda, static_cast<double>(n - 1)) * lambda;
}

double geometric_set_mass(double lambda, const std::function<bool(std::size_t)>& member) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("geometric_set_mass: lambda must lie in [0, 1]");
    if (lambda == 0.0) return 0.0;
    double mass = 0.0;
    double term = lambda;  // pmf at n
    double tail = 1.0;     // P(N >= n)
    for (std::size_t n = 1; tail > 1e-15; ++n) {
        if (member(n)) mass += term;
        tail -= term;
        term *= 1.0 - lambda;
        if (n > 100'000'000) break;
    }
    return std::min(mass, 1.0);
}

}  // namespace mixhit
