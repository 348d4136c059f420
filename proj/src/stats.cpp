#include "mixhit/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "mixhit/errors.hpp"

namespace mixhit {

double normal_quantile_two_sided(double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidArgument("confidence must lie in (0, 1)");
    boost::math::normal_distribution<double> z;
    return boost::math::quantile(z, 0.5 + confidence / 2.0);
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double confidence) {
    if (n == 0) throw InvalidArgument("wilson_interval: n must be positive");
    if (successes > n) throw InvalidArgument("wilson_interval: successes exceed trials");
    const double z = normal_quantile_two_sided(confidence);
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    WilsonInterval w;
    w.center = center;
    w.halfwidth = half;
    w.lower = successes == 0 ? 0.0 : std::max(0.0, center - half);
    w.upper = successes == n ? 1.0 : std::min(1.0, center + half);
    return w;
}

McEstimate frequency_estimate(std::size_t successes, std::size_t n, double confidence) {
    const auto w = wilson_interval(successes, n, confidence);
    McEstimate e;
    e.point = static_cast<double>(successes) / static_cast<double>(n);
    e.halfwidth = w.halfwidth;
    e.confidence = confidence;
    e.n_samples = n;
    return e;
}

double dkw_epsilon(std::size_t n, double confidence) {
    if (n == 0) throw InvalidArgument("dkw_epsilon: n must be positive");
    if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidArgument("confidence must lie in (0, 1)");
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

double hoeffding_halfwidth(std::size_t n, double confidence) { return dkw_epsilon(n, confidence); }

double MeanAccumulator::mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }

double MeanAccumulator::sample_variance() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double v = (sum_sq - static_cast<double>(count) * m * m) / static_cast<double>(count - 1);
    return std::max(0.0, v);
}

}  // namespace mixhit
