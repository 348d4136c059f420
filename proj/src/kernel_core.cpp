#include "mixhit/kernel_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mixhit/errors.hpp"

namespace mixhit {

namespace {

void require_same_size(const FiniteKernel& kernel, const ProbVector& pi, const char* what) {
    if (kernel.size() != pi.size()) {
        std::ostringstream os;
        os << what << ": kernel has " << kernel.size() << " states, distribution has " << pi.size();
        throw DimensionMismatch(os.str());
    }
}

double row_tv(const Matrix& rows, Eigen::Index a, const double* other) {
    double l1 = 0.0;
    const double* r = rows.row(a).data();
    for (Eigen::Index j = 0; j < rows.cols(); ++j) l1 += std::abs(r[j] - other[j]);
    return 0.5 * l1;
}

}  // namespace

ProbVector stationary_distribution(const FiniteKernel& kernel) {
    if (kernel.cached_stationary()) return *kernel.cached_stationary();

    const auto n = static_cast<Eigen::Index>(kernel.size());
    const Eigen::MatrixXd system = kernel.matrix().transpose() - Eigen::MatrixXd::Identity(n, n);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(system);
    const double threshold = 1e-10 * static_cast<double>(n);
    const auto& sv = svd.singularValues();
    Eigen::Index null_dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= threshold) ++null_dim;
    }
    if (null_dim > 1) {
        std::ostringstream os;
        os << "stationary_distribution: fixed-point space has dimension " << null_dim;
        throw NonUniqueStationary(os.str());
    }

    Eigen::MatrixXd augmented(n + 1, n);
    augmented.topRows(n) = system;
    augmented.row(n).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs(n) = 1.0;
    const Eigen::VectorXd x = augmented.colPivHouseholderQr().solve(rhs);

    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double v = x(i);
        if (std::abs(v) < ProbVector::kNegativeClamp) v = 0.0;
        if (v < 0.0) {
            if (v < -1e-10) throw NonUniqueStationary("stationary_distribution: solution has negative mass");
            v = 0.0;
        }
        w[static_cast<std::size_t>(i)] = v;
        sum += v;
    }
    for (auto& v : w) v /= sum;
    return ProbVector(std::move(w), kernel.labels());
}

double stationarity_residual(const FiniteKernel& kernel, const ProbVector& pi) {
    require_same_size(kernel, pi, "stationarity_residual");
    const auto n = static_cast<Eigen::Index>(pi.size());
    const Eigen::Map<const Eigen::RowVectorXd> row(pi.weights().data(), n);
    const Eigen::RowVectorXd next = row * kernel.matrix();
    return (next - row).cwiseAbs().maxCoeff();
}

bool check_reversible(const FiniteKernel& kernel, const ProbVector& pi, double tol) {
    require_same_size(kernel, pi, "check_reversible");
    const std::size_t n = kernel.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            worst = std::max(worst, std::abs(pi[i] * kernel(i, j) - pi[j] * kernel(j, i)));
        }
    }
    return worst <= tol;
}

FiniteKernel reversibilize(const FiniteKernel& kernel, const ProbVector& pi) {
    require_same_size(kernel, pi, "reversibilize");
    const auto n = static_cast<Eigen::Index>(kernel.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        if (pi[static_cast<std::size_t>(i)] <= 0.0) {
            throw ZeroMassState("reversibilize: pi has a zero-mass state");
        }
    }
    const Matrix& p = kernel.matrix();
    Matrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pi_i = pi[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            const double adjoint = pi[static_cast<std::size_t>(j)] * p(j, i) / pi_i;
            out(i, j) = 0.5 * (p(i, j) + adjoint);
        }
    }
    return FiniteKernel(std::move(out), kernel.labels(), pi);
}

ProbVector iterate_distribution(const FiniteKernel& kernel, const ProbVector& start, std::size_t t) {
    require_same_size(kernel, start, "iterate_distribution");
    const auto n = static_cast<Eigen::Index>(kernel.size());
    Eigen::RowVectorXd current = Eigen::Map<const Eigen::RowVectorXd>(start.weights().data(), n);
    for (std::size_t step = 0; step < t; ++step) current = current * kernel.matrix();
    return ProbVector(std::vector<double>(current.data(), current.data() + n), kernel.labels());
}

Matrix multiply_rows(const Matrix& rows, const Matrix& kernel) {
    const Eigen::Index m = rows.rows();
    const Eigen::Index n = kernel.cols();
    Matrix out(m, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < m; ++i) out.row(i) = rows.row(i) * kernel;
    return out;
}

double worst_distance_to(const Matrix& rows, const ProbVector& pi) {
    if (static_cast<std::size_t>(rows.cols()) != pi.size()) {
        throw DimensionMismatch("worst_distance_to: dimension mismatch");
    }
    double worst = 0.0;
    const double* target = pi.weights().data();
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (Eigen::Index i = 0; i < rows.rows(); ++i) worst = std::max(worst, row_tv(rows, i, target));
    return worst;
}

double worst_pair_distance(const Matrix& rows) {
    double worst = 0.0;
    const Eigen::Index m = rows.rows();
#pragma omp parallel for reduction(max : worst) schedule(dynamic)
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i + 1; j < m; ++j) {
            worst = std::max(worst, row_tv(rows, i, rows.row(j).data()));
        }
    }
    return worst;
}

ContractionProfile contraction_profile(const FiniteKernel& kernel, const ProbVector& pi,
                                       std::size_t horizon) {
    require_same_size(kernel, pi, "contraction_profile");
    const auto n = static_cast<Eigen::Index>(kernel.size());
    ContractionProfile profile;
    profile.horizon = horizon;
    profile.d_values.reserve(horizon + 1);
    profile.dbar_values.reserve(horizon + 1);

    // Row x of `rows` is delta_x P^t; all start states advance in lockstep.
    Matrix rows = Matrix::Identity(n, n);
    for (std::size_t t = 0;; ++t) {
        profile.d_values.push_back(worst_distance_to(rows, pi));
        profile.dbar_values.push_back(worst_pair_distance(rows));
        if (t == horizon) break;
        rows = multiply_rows(rows, kernel.matrix());
    }
    return profile;
}

}  // namespace mixhit
