#include "mixhit/serial_reference.hpp"

#include <algorithm>
#include <cstdint>

#include "mixhit/errors.hpp"

namespace mixhit::serial {

namespace {

void require_small(const FiniteKernel& kernel, const ProbVector& pi, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
    if (kernel.size() != pi.size()) throw DimensionMismatch("pi and kernel dimensions differ");
    if (kernel.size() > 16) throw TooManyStates("serial reference: at most 16 states");
}

std::vector<StateSet> feasible_sets(const ProbVector& pi, double alpha) {
    const std::size_t n = pi.size();
    std::vector<StateSet> sets;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        auto s = StateSet::from_mask(mask);
        if (pi.mass(s) >= alpha - kMassSlack) sets.push_back(std::move(s));
    }
    return sets;
}

}  // namespace

ContractionProfile contraction_profile(const FiniteKernel& kernel, const ProbVector& pi, std::size_t horizon) {
    const std::size_t n = kernel.size();
    ContractionProfile out;
    out.horizon = horizon;
    out.d_values.assign(horizon + 1, 0.0);
    out.dbar_values.assign(horizon + 1, 0.0);
    for (std::size_t t = 0; t <= horizon; ++t) {
        std::vector<ProbVector> rows;
        rows.reserve(n);
        for (std::size_t x = 0; x < n; ++x) rows.push_back(iterate_distribution(kernel, ProbVector::point_mass(n, x), t));
        for (std::size_t x = 0; x < n; ++x) {
            out.d_values[t] = std::max(out.d_values[t], tv_distance(rows[x], pi));
            for (std::size_t y = x + 1; y < n; ++y) out.dbar_values[t] = std::max(out.dbar_values[t], tv_distance(rows[x], rows[y]));
        }
    }
    return out;
}

MaxHittingResult max_hitting_time(const FiniteKernel& kernel, const ProbVector& pi, double alpha,
                                  HittingConvention convention) {
    require_small(kernel, pi, alpha);
    const std::size_t n = kernel.size();
    MaxHittingResult best;
    best.t_H = -1.0;
    for (const auto& set : feasible_sets(pi, alpha)) {
        ++best.sets_examined;
        const auto h = expected_hitting_times(kernel, set.indicator(n), convention);
        for (std::size_t x = 0; x < n; ++x) {
            if (h[x] > best.t_H) {
                best.t_H = h[x];
                best.witness_set = set;
                best.witness_start = x;
            }
        }
    }
    return best;
}

LargeHittingResult large_hitting_time(const FiniteKernel& kernel, const ProbVector& pi, double alpha, double threshold,
                                      HittingConvention convention, std::size_t horizon_cap) {
    require_small(kernel, pi, alpha);
    const std::size_t n = kernel.size();
    const Matrix& p = kernel.matrix();
    LargeHittingResult best;
    for (const auto& set : feasible_sets(pi, alpha)) {
        ++best.sets_examined;
        const auto in = set.indicator(n);
        for (std::size_t x = 0; x < n; ++x) {
            // alive[y] = P_x(X_t = y, tau_A > t)
            std::vector<double> alive(n, 0.0);
            alive[x] = 1.0;
            std::size_t t = 0;
            auto hit_mass = [&]() {
                double s = 0.0;
                for (double a : alive) s += a;
                return 1.0 - s;
            };
            if (convention == HittingConvention::inclusive && in[x]) alive[x] = 0.0;
            while (!(hit_mass() > threshold)) {
                if (t >= horizon_cap) throw NoFiniteTime("serial large hitting time: horizon cap reached");
                std::vector<double> next(n, 0.0);
                for (std::size_t y = 0; y < n; ++y) {
                    if (alive[y] == 0.0) continue;
                    for (std::size_t z = 0; z < n; ++z) next[z] += alive[y] * p(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(z));
                }
                for (std::size_t z = 0; z < n; ++z) {
                    if (in[z]) next[z] = 0.0;
                }
                alive = std::move(next);
                ++t;
            }
            if (best.sets_examined == 1 && x == 0) {
                best.tau_g = t;
                best.witness_set = set;
                best.witness_start = x;
            } else if (t > best.tau_g) {
                best.tau_g = t;
                best.witness_set = set;
                best.witness_start = x;
            }
        }
    }
    return best;
}

}  // namespace mixhit::serial
