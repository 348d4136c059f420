#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mixhit {

// A set of state indices, kept sorted and duplicate-free.
class StateSet {
public:
    StateSet() = default;
    StateSet(std::initializer_list<std::size_t> states);
    explicit StateSet(std::vector<std::size_t> states);

    // Bit i of `mask` selects state i. Only valid for n <= 64.
    static StateSet from_mask(std::uint64_t mask);
    static StateSet all(std::size_t n);

    std::uint64_t mask() const;
    bool contains(std::size_t state) const;
    std::size_t size() const { return states_.size(); }
    bool empty() const { return states_.empty(); }
    std::size_t max_state() const { return states_.empty() ? 0 : states_.back(); }

    StateSet complement(std::size_t n) const;
    std::vector<bool> indicator(std::size_t n) const;

    auto begin() const { return states_.begin(); }
    auto end() const { return states_.end(); }
    const std::vector<std::size_t>& states() const { return states_; }

    friend bool operator==(const StateSet&, const StateSet&) = default;

private:
    std::vector<std::size_t> states_;
};

std::string to_string(const StateSet& set);

// A finite probability distribution. Weights are non-negative and sum to one;
// inputs off by at most kRenormTol are renormalized, anything worse is rejected.
class ProbVector {
public:
    static constexpr double kSumTol = 1e-12;
    static constexpr double kRenormTol = 1e-9;
    // Magnitudes below this are treated as round-off and clamped to zero.
    static constexpr double kNegativeClamp = 1e-14;

    explicit ProbVector(std::vector<double> weights, std::vector<std::string> labels = {});
    ProbVector(std::initializer_list<double> weights);

    static ProbVector point_mass(std::size_t n, std::size_t state);
    static ProbVector uniform(std::size_t n);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const { return weights_; }
    const std::vector<std::string>& labels() const { return labels_; }

    double mass(const StateSet& set) const;
    // pi restricted to `set` and renormalized; throws ZeroMassState if pi(set) = 0.
    ProbVector restricted(const StateSet& set) const;

private:
    std::vector<double> weights_;
    std::vector<std::string> labels_;
};

// Half the L1 distance, i.e. sup_A |mu(A) - nu(A)| on a finite space.
double tv_distance(std::span<const double> mu, std::span<const double> nu);
double tv_distance(const ProbVector& mu, const ProbVector& nu);

}  // namespace mixhit
