#pragma once

// Naive reference computations used as test oracles. Plain nested vectors and
// std::mt19937 only; nothing here calls into the library's numerics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mixhit/finite_kernel.hpp"

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline Mat from_kernel(const mixhit::FiniteKernel& k) {
    Mat m(k.size(), Vec(k.size()));
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = 0; j < k.size(); ++j) m[i][j] = k(i, j);
    return m;
}

inline mixhit::FiniteKernel to_kernel(const Mat& m) { return mixhit::FiniteKernel::from_rows(m); }

inline Mat identity(std::size_t n) {
    Mat m(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
    const std::size_t n = a.size(), k = b.size(), m = b[0].size();
    Mat c(n, Vec(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

inline Vec vec_mul(const Vec& v, const Mat& p) {
    Vec out(p[0].size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[i] * p[i][j];
    return out;
}

inline Mat power(const Mat& p, std::size_t t) {
    Mat r = identity(p.size());
    for (std::size_t s = 0; s < t; ++s) r = mul(r, p);
    return r;
}

inline Mat lazy(const Mat& p) {
    Mat l = p;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) l[i][j] = 0.5 * p[i][j] + (i == j ? 0.5 : 0.0);
    return l;
}

inline double tv(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
    double w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) w = std::max(w, std::abs(a[i][j] - b[i][j]));
    return w;
}

inline double d_of(const Mat& pt, const Vec& pi) {
    double w = 0.0;
    for (const auto& row : pt) w = std::max(w, tv(row, pi));
    return w;
}

inline double dbar_of(const Mat& pt) {
    double w = 0.0;
    for (const auto& a : pt)
        for (const auto& b : pt) w = std::max(w, tv(a, b));
    return w;
}

// Linear scan over t; returns nullopt if not reached by t_max.
inline std::optional<std::size_t> mixing_time(const Mat& p, const Vec& pi, double eps, bool standardized,
                                              std::size_t t_max = 5000) {
    Mat pt = identity(p.size());
    for (std::size_t t = 0; t <= t_max; ++t) {
        const double d = standardized ? dbar_of(pt) : d_of(pt, pi);
        if (d <= eps + 1e-12) return t;
        pt = mul(pt, p);
    }
    return std::nullopt;
}

// Power iteration on the lazy chain (same stationary law, always aperiodic).
inline Vec stationary(const Mat& p, std::size_t iters = 200000, double tol = 1e-15) {
    const Mat l = lazy(p);
    Vec v(p.size(), 1.0 / static_cast<double>(p.size()));
    for (std::size_t it = 0; it < iters; ++it) {
        Vec w = vec_mul(v, l);
        double diff = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(w[i] - v[i]));
        v = std::move(w);
        if (diff < tol) break;
    }
    return v;
}

// E_x[tau_A] (inclusive) by value iteration h <- 1 + P h off A.
inline Vec expected_hitting(const Mat& p, const std::vector<bool>& in_a, std::size_t iters = 2000000,
                            double tol = 1e-12) {
    const std::size_t n = p.size();
    Vec h(n, 0.0);
    for (std::size_t it = 0; it < iters; ++it) {
        Vec g(n, 0.0);
        double diff = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            if (in_a[x]) continue;
            double s = 1.0;
            for (std::size_t y = 0; y < n; ++y) s += p[x][y] * h[y];
            g[x] = s;
            diff = std::max(diff, std::abs(g[x] - h[x]) / std::max(1.0, g[x]));
        }
        h = std::move(g);
        if (diff < tol) break;
    }
    return h;
}

// P_x(tau_A <= t) for t = 0..horizon, inclusive convention, by forward
// propagation of the not-yet-absorbed mass.
inline std::vector<Vec> hitting_cdf(const Mat& p, const std::vector<bool>& in_a, std::size_t horizon) {
    const std::size_t n = p.size();
    std::vector<Vec> cdf(n, Vec(horizon + 1, 0.0));
    for (std::size_t x = 0; x < n; ++x) {
        Vec alive(n, 0.0);
        alive[x] = in_a[x] ? 0.0 : 1.0;
        for (std::size_t t = 0; t <= horizon; ++t) {
            double s = 0.0;
            for (double a : alive) s += a;
            cdf[x][t] = 1.0 - s;
            Vec next(n, 0.0);
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    if (!in_a[z]) next[z] += alive[y] * p[y][z];
            alive = std::move(next);
        }
    }
    return cdf;
}

// Trace on S by summing excursions: Q = P_SS + sum_k P_SC P_CC^k P_CS.
inline Mat trace(const Mat& p, const std::vector<std::size_t>& s, std::size_t terms = 20000) {
    const std::size_t n = p.size();
    std::vector<bool> in(n, false);
    for (auto i : s) in[i] = true;
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) c.push_back(i);
    Mat q(s.size(), Vec(s.size(), 0.0));
    for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = 0; b < s.size(); ++b) q[a][b] = p[s[a]][s[b]];
        // mass currently wandering in C
        Vec w(c.size(), 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) w[j] = p[s[a]][c[j]];
        for (std::size_t k = 0; k < terms; ++k) {
            double total = 0.0;
            for (double x : w) total += x;
            if (total < 1e-17) break;
            for (std::size_t b = 0; b < s.size(); ++b)
                for (std::size_t j = 0; j < c.size(); ++j) q[a][b] += w[j] * p[c[j]][s[b]];
            Vec nw(c.size(), 0.0);
            for (std::size_t j = 0; j < c.size(); ++j)
                for (std::size_t l = 0; l < c.size(); ++l) nw[l] += w[j] * p[c[j]][c[l]];
            w = std::move(nw);
        }
    }
    return q;
}

inline Mat random_stochastic(std::size_t n, std::uint32_t seed, double sparsity = 0.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Mat m(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = (u(gen) < sparsity && j != (i + 1) % n) ? 0.0 : u(gen) + 1e-3;
            s += m[i][j];
        }
        for (auto& x : m[i]) x /= s;
    }
    return m;
}

// Symmetric conductances give a reversible chain with pi proportional to row sums.
inline Mat random_reversible(std::size_t n, std::uint32_t seed, Vec* pi = nullptr) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Mat c(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) c[i][j] = c[j][i] = u(gen);
    Mat p(n, Vec(n));
    Vec w(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (double x : c[i]) w[i] += x;
        for (std::size_t j = 0; j < n; ++j) p[i][j] = c[i][j] / w[i];
        total += w[i];
    }
    if (pi) {
        *pi = w;
        for (auto& x : *pi) x /= total;
    }
    return p;
}

inline double binom(std::size_t t, std::size_t s) {
    double r = 1.0;
    for (std::size_t i = 1; i <= s; ++i) r = r * static_cast<double>(t - s + i) / static_cast<double>(i);
    return r;
}

}  // namespace oracle
