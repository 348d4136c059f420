#include "mixhit/finite_kernel.hpp"

#include <cmath>
#include <deque>
#include <numeric>
#include <limits>
#include <sstream>

#include "mixhit/errors.hpp"

namespace mixhit {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

}  // namespace

FiniteKernel::FiniteKernel(Matrix matrix, std::vector<std::string> labels,
                           std::optional<ProbVector> stationary)
    : matrix_(std::move(matrix)), labels_(std::move(labels)), stationary_(std::move(stationary)) {
    const auto n = matrix_.rows();
    if (n == 0 || matrix_.cols() != n) throw InvalidKernel("FiniteKernel: matrix must be square and non-empty");
    if (labels_.empty()) labels_ = default_labels(static_cast<std::size_t>(n));
    if (labels_.size() != static_cast<std::size_t>(n)) {
        throw DimensionMismatch("FiniteKernel: label count differs from state count");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            double& p = matrix_(i, j);
            if (!std::isfinite(p)) throw InvalidKernel("FiniteKernel: non-finite entry");
            if (p < 0.0) {
                if (-p > ProbVector::kNegativeClamp) {
                    std::ostringstream os;
                    os << "FiniteKernel: negative entry at (" << i << ',' << j << ')';
                    throw InvalidKernel(os.str());
                }
                p = 0.0;
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowTol) {
            std::ostringstream os;
            os.precision(17);
            os << "FiniteKernel: row " << i << " sums to " << sum;
            throw InvalidKernel(os.str());
        }
        // leave rows within summation round-off alone
        if (std::abs(sum - 1.0) > static_cast<double>(n) * std::numeric_limits<double>::epsilon()) matrix_.row(i) /= sum;
    }
    if (stationary_ && stationary_->size() != static_cast<std::size_t>(n)) {
        throw DimensionMismatch("FiniteKernel: cached stationary has wrong dimension");
    }
}

FiniteKernel FiniteKernel::from_rows(const std::vector<std::vector<double>>& rows,
                                     std::vector<std::string> labels) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
            throw InvalidKernel("FiniteKernel::from_rows: ragged or non-square input");
        }
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return FiniteKernel(std::move(m), std::move(labels));
}

std::vector<double> FiniteKernel::row(std::size_t i) const {
    const auto r = matrix_.row(static_cast<Eigen::Index>(i));
    return {r.data(), r.data() + r.size()};
}

FiniteKernel FiniteKernel::with_stationary(ProbVector pi) const {
    return FiniteKernel(matrix_, labels_, std::move(pi));
}

std::vector<bool> reachable_from(const FiniteKernel& kernel, std::size_t from) {
    const std::size_t n = kernel.size();
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n; ++v) {
            if (!seen[v] && kernel(u, v) > 0.0) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    return seen;
}

std::vector<bool> can_reach(const FiniteKernel& kernel, const std::vector<bool>& target) {
    const std::size_t n = kernel.size();
    std::vector<bool> ok = target;
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        if (ok[i]) queue.push_back(i);
    }
    // Backward search along reversed edges.
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (std::size_t u = 0; u < n; ++u) {
            if (!ok[u] && kernel(u, v) > 0.0) {
                ok[u] = true;
                queue.push_back(u);
            }
        }
    }
    return ok;
}

bool is_irreducible(const FiniteKernel& kernel) {
    const auto fwd = reachable_from(kernel, 0);
    std::vector<bool> zero(kernel.size(), false);
    zero[0] = true;
    const auto bwd = can_reach(kernel, zero);
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        if (!fwd[i] || !bwd[i]) return false;
    }
    return true;
}

bool is_aperiodic(const FiniteKernel& kernel) {
    if (!is_irreducible(kernel)) return false;
    const std::size_t n = kernel.size();
    std::vector<long> level(n, -1);
    std::deque<std::size_t> queue{0};
    level[0] = 0;
    long period = 0;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n; ++v) {
            if (kernel(u, v) <= 0.0) continue;
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                period = std::gcd(period, std::abs(level[u] + 1 - level[v]));
            }
        }
    }
    return period == 1;
}

}  // namespace mixhit
