#include "mixhit/times.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "mixhit/errors.hpp"
#include "mixhit/transforms.hpp"

namespace mixhit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
}

std::vector<bool> to_indicator(const StateSet& set, std::size_t n) {
    if (set.empty()) throw InvalidArgument("target set is empty");
    if (set.max_state() >= n) throw DimensionMismatch("target set has out-of-range states");
    return set.indicator(n);
}

// States outside `target` whose hitting time of `target` is infinite with
// positive probability: those that can reach, without passing through
// `target`, a state from which `target` is unreachable.
std::vector<bool> infinite_hitting_states(const FiniteKernel& kernel, const std::vector<bool>& target) {
    const std::size_t n = kernel.size();
    const auto reaches = can_reach(kernel, target);
    std::vector<bool> bad(n, false);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        if (!reaches[i]) {
            bad[i] = true;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (std::size_t u = 0; u < n; ++u) {
            if (!bad[u] && !target[u] && kernel(u, v) > 0.0) {
                bad[u] = true;
                stack.push_back(u);
            }
        }
    }
    return bad;
}

struct SetOutcome {
    double value = 0.0;
    std::size_t start = 0;
};

std::vector<StateSet> candidate_sets(const FiniteKernel& kernel, const ProbVector& pi, double alpha,
                                     const HittingSearchOptions& options, bool& exact) {
    require_alpha(alpha);
    if (kernel.size() != pi.size()) throw DimensionMismatch("pi and kernel dimensions differ");
    if (!options.candidate_family.empty()) {
        exact = false;
        std::vector<StateSet> sets;
        for (const auto& s : options.candidate_family) {
            if (pi.mass(s) >= alpha - kMassSlack) sets.push_back(s);
        }
        if (sets.empty()) throw InvalidArgument("no candidate set has stationary mass >= alpha");
        return sets;
    }
    if (kernel.size() > options.enumeration_cap) {
        std::ostringstream os;
        os << "chain has " << kernel.size() << " states, above the enumeration cap of "
           << options.enumeration_cap << "; supply a candidate set family";
        throw TooManyStates(os.str());
    }
    exact = true;
    return minimal_feasible_sets(pi, alpha);
}

}  // namespace

std::string to_string(HittingConvention c) {
    return c == HittingConvention::inclusive ? "inclusive" : "strict";
}

MixingResult mixing_time(const FiniteKernel& kernel, const ProbVector& pi, double epsilon, bool standardized,
                         std::size_t t_max) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("mixing_time: epsilon must lie in (0, 1)");
    if (kernel.size() != pi.size()) throw DimensionMismatch("mixing_time: pi and kernel dimensions differ");
    const double residual = stationarity_residual(kernel, pi);
    if (residual > 1e-9) {
        std::ostringstream os;
        os << "mixing_time: pi is not stationary (residual " << residual << ")";
        throw NonStationaryPi(os.str());
    }

    const auto eval = [&](const Matrix& rows) {
        return standardized ? worst_pair_distance(rows) : worst_distance_to(rows, pi);
    };
    const auto mixed = [&](const Matrix& rows) { return eval(rows) <= epsilon + kTieSlack; };

    MixingResult result;
    result.epsilon = epsilon;
    result.standardized = standardized;

    const auto n = static_cast<Eigen::Index>(kernel.size());
    const Matrix identity = Matrix::Identity(n, n);

    const auto finish = [&](std::optional<std::size_t> time) {
        result.time = time;
        const std::size_t horizon = std::min(time.value_or(t_max), MixingResult::kProfileCap);
        result.profile_used = contraction_profile(kernel, pi, horizon);
        return result;
    };

    if (mixed(identity)) return finish(0);
    if (t_max == 0) return finish(std::nullopt);

    // powers[j] = P^(2^j)
    std::vector<Matrix> powers{kernel.matrix()};
    std::size_t j = 0;
    std::size_t hi = 0;
    for (;;) {
        const std::size_t t = std::size_t{1} << j;
        if (t >= t_max) {
            Matrix rows = identity;
            for (std::size_t b = 0; (t_max >> b) != 0; ++b) {
                if ((t_max >> b) & 1U) rows = multiply_rows(rows, powers[b]);
            }
            if (!mixed(rows)) return finish(std::nullopt);
            hi = t_max;
            break;
        }
        if (mixed(powers[j])) {
            hi = t;
            break;
        }
        powers.push_back(multiply_rows(powers[j], powers[j]));
        ++j;
    }
    if (j == 0) return finish(1);

    // Largest unmixed time lies in [2^(j-1), hi).
    std::size_t lo = std::size_t{1} << (j - 1);
    Matrix lo_rows = powers[j - 1];
    for (std::size_t b = j - 1; b-- > 0;) {
        const std::size_t candidate = lo + (std::size_t{1} << b);
        if (candidate >= hi) continue;
        Matrix rows = multiply_rows(lo_rows, powers[b]);
        if (!mixed(rows)) {
            lo = candidate;
            lo_rows = std::move(rows);
        }
    }
    return finish(lo + 1);
}

std::vector<double> expected_hitting_times(const FiniteKernel& kernel, const std::vector<bool>& target,
                                           HittingConvention convention) {
    const std::size_t n = kernel.size();
    if (target.size() != n) throw DimensionMismatch("expected_hitting_times: indicator size mismatch");
    const auto infinite = infinite_hitting_states(kernel, target);

    std::vector<std::size_t> free_states;
    std::vector<Eigen::Index> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!target[i] && !infinite[i]) {
            slot[i] = static_cast<Eigen::Index>(free_states.size());
            free_states.push_back(i);
        }
    }

    std::vector<double> h(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (infinite[i]) h[i] = kInf;
    }
    const auto m = static_cast<Eigen::Index>(free_states.size());
    if (m > 0) {
        Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m, m);
        for (Eigen::Index a = 0; a < m; ++a) {
            const auto x = free_states[static_cast<std::size_t>(a)];
            for (std::size_t y = 0; y < n; ++y) {
                if (slot[y] >= 0) system(a, slot[y]) -= kernel(x, y);
            }
        }
        const Eigen::VectorXd sol = system.fullPivLu().solve(Eigen::VectorXd::Ones(m));
        for (Eigen::Index a = 0; a < m; ++a) h[free_states[static_cast<std::size_t>(a)]] = std::max(0.0, sol(a));
    }

    if (convention == HittingConvention::inclusive) return h;

    std::vector<double> strict(n, 1.0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const double p = kernel(x, y);
            if (p > 0.0) strict[x] += p * h[y];
        }
    }
    return strict;
}

HittingResult hitting_moments(const FiniteKernel& kernel, const StateSet& target, std::size_t horizon,
                              HittingConvention convention) {
    const std::size_t n = kernel.size();
    const auto in_target = to_indicator(target, n);

    HittingResult result;
    result.target = target;
    result.convention = convention;
    result.expected = expected_hitting_times(kernel, in_target, convention);
    result.cdf.assign(n, std::vector<double>(horizon + 1, 0.0));

    // q[x] = P_x(inclusive tau_A <= t)
    Eigen::VectorXd q(static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x) q(static_cast<Eigen::Index>(x)) = in_target[x] ? 1.0 : 0.0;
    const Matrix& p = kernel.matrix();
    for (std::size_t t = 0; t <= horizon; ++t) {
        if (convention == HittingConvention::inclusive) {
            for (std::size_t x = 0; x < n; ++x) result.cdf[x][t] = q(static_cast<Eigen::Index>(x));
        }
        Eigen::VectorXd next = p * q;
        // Strict: P_x(tau^+ <= t + 1) = sum_y P_xy P_y(tau <= t).
        if (convention == HittingConvention::strict && t < horizon) {
            for (std::size_t x = 0; x < n; ++x) result.cdf[x][t + 1] = next(static_cast<Eigen::Index>(x));
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (in_target[x]) next(static_cast<Eigen::Index>(x)) = 1.0;
        }
        q = std::move(next);
    }
    return result;
}

std::vector<StateSet> minimal_feasible_sets(const ProbVector& pi, double alpha) {
    require_alpha(alpha);
    const std::size_t n = pi.size();
    if (n > 30) throw TooManyStates("minimal_feasible_sets: more than 30 states");
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> mass(count, 0.0);
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        const auto low = static_cast<std::size_t>(std::countr_zero(mask));
        mass[mask] = mass[mask & (mask - 1)] + pi[low];
    }
    const double bar = alpha - kMassSlack;
    std::vector<StateSet> sets;
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        if (mass[mask] < bar) continue;
        bool minimal = true;
        for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
            const std::uint64_t bit = rest & (~rest + 1);
            if (mass[mask ^ bit] >= bar) {
                minimal = false;
                break;
            }
        }
        if (minimal) sets.push_back(StateSet::from_mask(mask));
    }
    return sets;
}

MaxHittingResult max_hitting_time(const FiniteKernel& kernel, const ProbVector& pi, double alpha,
                                  const HittingSearchOptions& options) {
    bool exact = true;
    const auto sets = candidate_sets(kernel, pi, alpha, options, exact);
    const std::size_t n = kernel.size();
    std::vector<SetOutcome> outcomes(sets.size());

#pragma omp parallel for schedule(dynamic)
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto h = expected_hitting_times(kernel, sets[s].indicator(n), options.convention);
        SetOutcome best{-1.0, 0};
        for (std::size_t x = 0; x < n; ++x) {
            if (h[x] > best.value) best = {h[x], x};
        }
        outcomes[s] = best;
    }

    MaxHittingResult result;
    result.exact = exact;
    result.sets_examined = sets.size();
    result.t_H = -1.0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        if (outcomes[s].value > result.t_H) {
            result.t_H = outcomes[s].value;
            result.witness_set = sets[s];
            result.witness_start = outcomes[s].start;
        }
    }
    return result;
}

std::size_t set_large_hitting_time(const FiniteKernel& kernel, const std::vector<bool>& target, double threshold,
                                   HittingConvention convention, std::size_t horizon_cap,
                                   std::size_t* worst_start) {
    const std::size_t n = kernel.size();
    const auto reaches = can_reach(kernel, target);
    for (std::size_t x = 0; x < n; ++x) {
        if (!reaches[x]) throw NoFiniteTime("large hitting time: target unreachable from some state");
    }
    const Matrix& p = kernel.matrix();
    Eigen::VectorXd q(static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x) q(static_cast<Eigen::Index>(x)) = target[x] ? 1.0 : 0.0;

    const auto argmin = [](const Eigen::VectorXd& v) {
        Eigen::Index idx = 0;
        v.minCoeff(&idx);
        return static_cast<std::size_t>(idx);
    };

    // cdf_t is q (inclusive) or P q_{t-1} (strict, zero at t = 0).
    Eigen::VectorXd cdf = convention == HittingConvention::inclusive ? q : Eigen::VectorXd::Zero(q.size());
    std::size_t prev_worst = argmin(cdf);
    for (std::size_t t = 0; t <= horizon_cap; ++t) {
        if (cdf.minCoeff() > threshold) {
            if (worst_start) *worst_start = prev_worst;
            return t;
        }
        prev_worst = argmin(cdf);
        Eigen::VectorXd next = p * q;
        if (convention == HittingConvention::strict) cdf = next;
        for (std::size_t x = 0; x < n; ++x) {
            if (target[x]) next(static_cast<Eigen::Index>(x)) = 1.0;
        }
        q = std::move(next);
        if (convention == HittingConvention::inclusive) cdf = q;
    }
    throw NoFiniteTime("large hitting time: horizon cap reached");
}

LargeHittingResult large_hitting_time(const FiniteKernel& kernel, const ProbVector& pi, double alpha,
                                      const HittingSearchOptions& options) {
    bool exact = true;
    const auto sets = candidate_sets(kernel, pi, alpha, options, exact);
    const std::size_t n = kernel.size();
    std::vector<std::size_t> times(sets.size(), 0);
    std::vector<std::size_t> starts(sets.size(), 0);
    std::vector<int> failed(sets.size(), 0);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t s = 0; s < sets.size(); ++s) {
        try {
            times[s] = set_large_hitting_time(kernel, sets[s].indicator(n), options.threshold, options.convention,
                                              options.horizon_cap, &starts[s]);
        } catch (const NoFiniteTime&) {
            failed[s] = 1;
        }
    }
    for (std::size_t s = 0; s < sets.size(); ++s) {
        if (failed[s]) throw NoFiniteTime("large hitting time: no finite time for set " + to_string(sets[s]));
    }

    LargeHittingResult result;
    result.exact = exact;
    result.sets_examined = sets.size();
    bool first = true;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        if (first || times[s] > result.tau_g) {
            result.tau_g = times[s];
            result.witness_set = sets[s];
            result.witness_start = starts[s];
            first = false;
        }
    }
    return result;
}

std::size_t easy_direction_C(double alpha) {
    require_alpha(alpha);
    return static_cast<std::size_t>(std::ceil(-std::log2(alpha) + 1.0 - 1e-12));
}

std::size_t easy_direction_k0(double alpha) {
    require_alpha(alpha);
    return static_cast<std::size_t>(std::ceil(std::log(10.0) / -std::log1p(-alpha / 2.0) - 1e-12));
}

EasyDirectionCertificate easy_direction_certificate(const FiniteKernel& kernel, const ProbVector& pi,
                                                    double alpha, std::size_t t_max) {
    EasyDirectionCertificate cert;
    cert.alpha = alpha;
    cert.C = easy_direction_C(alpha);
    cert.k0 = easy_direction_k0(alpha);

    const FiniteKernel lazy_kernel = lazy(kernel);
    const auto t_L = mixing_time(lazy_kernel, pi, 0.25, false, t_max);
    if (t_L.unmixed()) {
        cert.vacuous = true;
        cert.passed = true;
        return cert;
    }
    cert.t_L = t_L.value();
    cert.T = cert.C * cert.t_L;

    const auto n = static_cast<Eigen::Index>(kernel.size());
    const Matrix rows = cert.T == 0 ? Matrix(Matrix::Identity(n, n)) : skeleton(lazy_kernel, cert.T).matrix();
    cert.lazy_distance_at_T = worst_distance_to(rows, pi);
    cert.distance_ok = cert.lazy_distance_at_T <= alpha / 2.0 + kTieSlack;

    cert.lazy_t_H = max_hitting_time(lazy_kernel, pi, alpha).t_H;
    cert.lazy_tau_g = large_hitting_time(lazy_kernel, pi, alpha).tau_g;
    cert.hitting_bound = 2.0 * static_cast<double>(cert.k0) * static_cast<double>(cert.T);
    cert.hitting_ok = cert.lazy_t_H <= cert.hitting_bound;
    cert.tau_ok = cert.lazy_tau_g <= cert.k0 * cert.T;
    cert.passed = cert.distance_ok && cert.hitting_ok && cert.tau_ok;
    return cert;
}

EquivalenceReport equivalence_report(const FiniteKernel& kernel, double alpha, double epsilon, std::size_t t_max) {
    EquivalenceReport report;
    report.n = kernel.size();
    report.alpha = alpha;
    report.epsilon = epsilon;

    const ProbVector pi = stationary_distribution(kernel);
    report.reversible = check_reversible(kernel, pi, 1e-10);
    if (!report.reversible) report.warnings.emplace_back("kernel is not reversible; the comparison bounds need not hold");

    report.t_m = mixing_time(kernel, pi, epsilon, false, t_max);
    report.t_bar_m = mixing_time(kernel, pi, epsilon, true, t_max);
    report.t_L = mixing_time(lazy(kernel), pi, epsilon, false, t_max);

    const auto hit = max_hitting_time(kernel, pi, alpha);
    report.t_H = hit.t_H;
    report.witness_set = hit.witness_set;
    report.witness_start = hit.witness_start;
    report.tau_g = large_hitting_time(kernel, pi, alpha).tau_g;

    const double tau = static_cast<double>(report.tau_g);
    report.maxlarge_ok = 0.1 * tau <= report.t_H && report.t_H <= 2.0 * tau;

    report.unmixed = report.t_m.unmixed() || report.t_bar_m.unmixed() || report.t_L.unmixed();
    if (!report.unmixed) {
        report.ratio = static_cast<double>(report.t_L.value()) / std::max(report.t_H, 1.0);
        const auto tm = report.t_m.value();
        const auto tbar = report.t_bar_m.value();
        report.mixequivalent_ok = tm <= tbar && tbar <= 2 * tm;
    } else {
        report.warnings.emplace_back("chain does not mix within t_max (periodic?); ratio undefined");
    }
    report.certificate = easy_direction_certificate(kernel, pi, alpha, t_max);
    return report;
}

}  // namespace mixhit
