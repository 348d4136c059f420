#include "mixhit/prob_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mixhit/errors.hpp"

namespace mixhit {

StateSet::StateSet(std::initializer_list<std::size_t> states)
    : StateSet(std::vector<std::size_t>(states)) {}

StateSet::StateSet(std::vector<std::size_t> states) : states_(std::move(states)) {
    std::sort(states_.begin(), states_.end());
    states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
}

StateSet StateSet::from_mask(std::uint64_t mask) {
    std::vector<std::size_t> states;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1U) states.push_back(i);
    }
    StateSet out;
    out.states_ = std::move(states);
    return out;
}

StateSet StateSet::all(std::size_t n) {
    std::vector<std::size_t> states(n);
    std::iota(states.begin(), states.end(), std::size_t{0});
    return StateSet(std::move(states));
}

std::uint64_t StateSet::mask() const {
    std::uint64_t m = 0;
    for (auto s : states_) {
        if (s >= 64) throw InvalidArgument("StateSet::mask: state index >= 64");
        m |= std::uint64_t{1} << s;
    }
    return m;
}

bool StateSet::contains(std::size_t state) const {
    return std::binary_search(states_.begin(), states_.end(), state);
}

StateSet StateSet::complement(std::size_t n) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!contains(i)) out.push_back(i);
    }
    return StateSet(std::move(out));
}

std::vector<bool> StateSet::indicator(std::size_t n) const {
    std::vector<bool> ind(n, false);
    for (auto s : states_) {
        if (s >= n) throw DimensionMismatch("StateSet::indicator: state out of range");
        ind[s] = true;
    }
    return ind;
}

std::string to_string(const StateSet& set) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto s : set) {
        if (!first) os << ',';
        os << s;
        first = false;
    }
    os << '}';
    return os.str();
}

ProbVector::ProbVector(std::vector<double> weights, std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
    if (weights_.empty()) throw InvalidDistribution("ProbVector: empty weight vector");
    if (!labels_.empty() && labels_.size() != weights_.size()) {
        throw DimensionMismatch("ProbVector: label count differs from weight count");
    }
    double sum = 0.0;
    for (auto& w : weights_) {
        if (!std::isfinite(w)) throw InvalidDistribution("ProbVector: non-finite weight");
        if (w < 0.0) {
            if (-w > kNegativeClamp) throw InvalidDistribution("ProbVector: negative weight");
            w = 0.0;
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kRenormTol) {
        std::ostringstream os;
        os.precision(17);
        os << "ProbVector: weights sum to " << sum << ", expected 1";
        throw InvalidDistribution(os.str());
    }
    if (std::abs(sum - 1.0) > 0.0) {
        for (auto& w : weights_) w /= sum;
    }
}

ProbVector::ProbVector(std::initializer_list<double> weights)
    : ProbVector(std::vector<double>(weights)) {}

ProbVector ProbVector::point_mass(std::size_t n, std::size_t state) {
    if (state >= n) throw InvalidArgument("point_mass: state out of range");
    std::vector<double> w(n, 0.0);
    w[state] = 1.0;
    return ProbVector(std::move(w));
}

ProbVector ProbVector::uniform(std::size_t n) {
    if (n == 0) throw InvalidArgument("uniform: n must be positive");
    return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double ProbVector::mass(const StateSet& set) const {
    double m = 0.0;
    for (auto s : set) {
        if (s >= weights_.size()) throw DimensionMismatch("ProbVector::mass: state out of range");
        m += weights_[s];
    }
    return m;
}

ProbVector ProbVector::restricted(const StateSet& set) const {
    const double m = mass(set);
    if (m <= 0.0) throw ZeroMassState("ProbVector::restricted: set has zero mass");
    std::vector<double> w;
    w.reserve(set.size());
    for (auto s : set) w.push_back(weights_[s] / m);
    return ProbVector(std::move(w));
}

double tv_distance(std::span<const double> mu, std::span<const double> nu) {
    if (mu.size() != nu.size()) throw DimensionMismatch("tv_distance: dimension mismatch");
    double l1 = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) l1 += std::abs(mu[i] - nu[i]);
    return 0.5 * l1;
}

double tv_distance(const ProbVector& mu, const ProbVector& nu) {
    return tv_distance(mu.weights(), nu.weights());
}

}  // namespace mixhit
