#include "mixhit/transforms.hpp"

#include <cmath>
#include <sstream>

#include "mixhit/errors.hpp"
#include "mixhit/kernel_core.hpp"

namespace mixhit {

double CouplingMatrix::off_diagonal_mass() const {
    return joint.sum() - joint.diagonal().sum();
}

FiniteKernel lazy(const FiniteKernel& kernel) {
    const auto n = static_cast<Eigen::Index>(kernel.size());
    Matrix m = 0.5 * kernel.matrix() + 0.5 * Matrix::Identity(n, n);
    return FiniteKernel(std::move(m), kernel.labels(), kernel.cached_stationary());
}

FiniteKernel skeleton(const FiniteKernel& kernel, std::size_t k) {
    if (k == 0) throw InvalidArgument("skeleton: k must be at least 1");
    const auto n = static_cast<Eigen::Index>(kernel.size());
    Matrix result = Matrix::Identity(n, n);
    Matrix base = kernel.matrix();
    for (std::size_t e = k;;) {
        if (e & 1U) result = multiply_rows(result, base);
        e >>= 1U;
        if (e == 0) break;
        base = multiply_rows(base, base);
    }
    return FiniteKernel(std::move(result), kernel.labels(), kernel.cached_stationary());
}

FiniteKernel trace_exact(const FiniteKernel& kernel, const TraceSpec& spec) {
    const std::size_t n = kernel.size();
    if (spec.subset.empty()) throw InvalidArgument("trace_exact: watched set is empty");
    if (spec.subset.max_state() >= n) throw DimensionMismatch("trace_exact: watched set has out-of-range states");

    const auto in_s = spec.subset.indicator(n);
    const auto reaches = can_reach(kernel, in_s);
    for (std::size_t i = 0; i < n; ++i) {
        if (!reaches[i]) {
            std::ostringstream os;
            os << "trace_exact: state " << i << " outside the watched set never returns to it";
            throw AbsorbingComplement(os.str());
        }
    }

    const auto& s = spec.subset.states();
    const auto c = spec.subset.complement(n).states();
    const auto ns = static_cast<Eigen::Index>(s.size());
    const auto nc = static_cast<Eigen::Index>(c.size());
    const Matrix& p = kernel.matrix();

    Matrix q(ns, ns);
    for (Eigen::Index a = 0; a < ns; ++a) {
        for (Eigen::Index b = 0; b < ns; ++b) q(a, b) = p(static_cast<Eigen::Index>(s[a]), static_cast<Eigen::Index>(s[b]));
    }

    if (nc > 0) {
        Eigen::MatrixXd p_sc(ns, nc), p_cc(nc, nc), p_cs(nc, ns);
        for (Eigen::Index a = 0; a < ns; ++a)
            for (Eigen::Index b = 0; b < nc; ++b) p_sc(a, b) = p(static_cast<Eigen::Index>(s[a]), static_cast<Eigen::Index>(c[b]));
        for (Eigen::Index a = 0; a < nc; ++a) {
            for (Eigen::Index b = 0; b < nc; ++b) p_cc(a, b) = p(static_cast<Eigen::Index>(c[a]), static_cast<Eigen::Index>(c[b]));
            for (Eigen::Index b = 0; b < ns; ++b) p_cs(a, b) = p(static_cast<Eigen::Index>(c[a]), static_cast<Eigen::Index>(s[b]));
        }
        const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(nc, nc) - p_cc;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
        lu.setThreshold(spec.complement_solver_tol);
        if (!lu.isInvertible()) throw AbsorbingComplement("trace_exact: complement block is numerically singular");
        // Row a of `exits` is the law of the first S-state entered from c[a].
        const Eigen::MatrixXd exits = lu.solve(p_cs);
        q += p_sc * exits;
    }

    std::vector<std::string> labels;
    labels.reserve(s.size());
    for (auto state : s) labels.push_back(kernel.labels()[state]);
    return FiniteKernel(std::move(q), std::move(labels));
}

FiniteKernel build_G(const FiniteKernel& kernel, std::size_t k) {
    return lazy(skeleton(lazy(kernel), k));
}

CouplingMatrix maximal_coupling(const ProbVector& mu, const ProbVector& nu) {
    if (mu.size() != nu.size()) throw DimensionMismatch("maximal_coupling: dimension mismatch");
    const auto n = static_cast<Eigen::Index>(mu.size());
    Eigen::VectorXd overlap(n), rest_mu(n), rest_nu(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        overlap(i) = std::min(mu[k], nu[k]);
        rest_mu(i) = mu[k] - overlap(i);
        rest_nu(i) = nu[k] - overlap(i);
    }
    const double shared = overlap.sum();
    Matrix joint = overlap.asDiagonal();
    const double mismatch = 1.0 - shared;
    if (mismatch > 0.0) joint += rest_mu * rest_nu.transpose() / mismatch;
    return {std::move(joint), mu, nu};
}

FiniteKernel perturb_within(const FiniteKernel& kernel, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("perturb_within: delta must lie in [0, 1]");
    const auto n = static_cast<Eigen::Index>(kernel.size());
    Matrix m = (1.0 - delta) * kernel.matrix();
    m.array() += delta / static_cast<double>(n);
    return FiniteKernel(std::move(m), kernel.labels());
}

}  // namespace mixhit
