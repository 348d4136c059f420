#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mixhit/prob_vector.hpp"

namespace mixhit {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Row-stochastic transition matrix on states 0..n-1. Row i is the one-step law
// from state i. Immutable once built.
class FiniteKernel {
public:
    static constexpr double kRowTol = 1e-9;

    explicit FiniteKernel(Matrix matrix, std::vector<std::string> labels = {},
                          std::optional<ProbVector> stationary = std::nullopt);
    static FiniteKernel from_rows(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> labels = {});

    std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    double operator()(std::size_t i, std::size_t j) const {
        return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    std::vector<double> row(std::size_t i) const;
    const std::vector<std::string>& labels() const { return labels_; }

    const std::optional<ProbVector>& cached_stationary() const { return stationary_; }
    FiniteKernel with_stationary(ProbVector pi) const;

private:
    Matrix matrix_;
    std::vector<std::string> labels_;
    std::optional<ProbVector> stationary_;
};

// States reachable from `from` along positive-probability edges (including `from`).
std::vector<bool> reachable_from(const FiniteKernel& kernel, std::size_t from);
// States from which some state in `target` can be reached (including `target` itself).
std::vector<bool> can_reach(const FiniteKernel& kernel, const std::vector<bool>& target);
bool is_irreducible(const FiniteKernel& kernel);
// Irreducible and period one.
bool is_aperiodic(const FiniteKernel& kernel);

}  // namespace mixhit
