#pragma once

#include <cstddef>

namespace mixhit {

// Two-sided standard normal quantile z with P(|Z| <= z) = confidence.
double normal_quantile_two_sided(double confidence);

struct WilsonInterval {
    double center = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double halfwidth = 0.0;
};

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double confidence);

// sqrt(ln(2/delta) / (2n)) with delta = 1 - confidence.
double dkw_epsilon(std::size_t n, double confidence);
double hoeffding_halfwidth(std::size_t n, double confidence);

// A Monte Carlo estimate. For Bernoulli events the halfwidth is Wilson's;
// for means it is the CLT halfwidth. Censored samples are counted, not dropped.
struct McEstimate {
    double point = 0.0;
    double halfwidth = 0.0;
    double confidence = 0.99;
    std::size_t n_samples = 0;
    std::size_t n_censored = 0;

    double lower() const { return point - halfwidth; }
    double upper() const { return point + halfwidth; }
};

McEstimate frequency_estimate(std::size_t successes, std::size_t n, double confidence);

// Mergeable sufficient statistics for a sample mean.
struct MeanAccumulator {
    std::size_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x) {
        ++count;
        sum += x;
        sum_sq += x * x;
    }
    void merge(const MeanAccumulator& o) {
        count += o.count;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    double mean() const;
    double sample_variance() const;
};

}  // namespace mixhit
