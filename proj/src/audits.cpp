#include "mixhit/audits.hpp"

#include <cmath>
#include <sstream>

#include "mixhit/kernel_core.hpp"
#include "mixhit/times.hpp"
#include "mixhit/transforms.hpp"

namespace mixhit {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

AuditRow row(const ZooChain& c, std::string check, std::string params) {
    AuditRow r;
    r.chain_id = c.id;
    r.check = std::move(check);
    r.parameters = std::move(params);
    return r;
}

AuditRow skipped(const ZooChain& c, std::string check, std::string why) {
    AuditRow r = row(c, std::move(check), "");
    r.applicable = false;
    r.detail = std::move(why);
    return r;
}

// rows of P^s for s = 0..t
std::vector<Matrix> powers_upto(const FiniteKernel& k, std::size_t t) {
    const auto n = static_cast<Eigen::Index>(k.size());
    std::vector<Matrix> out;
    out.emplace_back(Matrix::Identity(n, n));
    for (std::size_t s = 1; s <= t; ++s) out.push_back(multiply_rows(out.back(), k.matrix()));
    return out;
}

}  // namespace

std::vector<AuditRow> audit_chain(const ZooChain& chain, const AuditOptions& o) {
    std::vector<AuditRow> rows;
    const auto& P = chain.kernel;
    const auto& pi = chain.pi;
    const std::size_t n = P.size();
    const bool aperiodic = is_aperiodic(P);

    // maximum vs large hitting time
    if (n <= 16) {
        for (double alpha : o.alphas) {
            auto r = row(chain, "maxlarge", "alpha=" + fmt(alpha));
            const double tH = max_hitting_time(P, pi, alpha).t_H;
            const double tg = static_cast<double>(large_hitting_time(P, pi, alpha).tau_g);
            r.passed = 0.1 * tg <= tH && tH <= 2.0 * tg;
            r.worst = tg > 0 ? tH / tg : 0.0;
            r.detail = "t_H=" + fmt(tH) + " tau_g=" + fmt(tg);
            rows.push_back(r);
        }
    } else {
        rows.push_back(skipped(chain, "maxlarge", "more than 16 states"));
    }

    // d <= dbar <= 2d and dbar(s+t) <= dbar(s) dbar(t)
    {
        const auto prof = contraction_profile(P, pi, 2 * o.horizon);
        auto r = row(chain, "mixequal", "t<=" + std::to_string(o.horizon));
        double worst = -1.0;
        for (std::size_t t = 0; t <= o.horizon; ++t) {
            const double d = prof.d_values[t], db = prof.dbar_values[t];
            worst = std::max({worst, d - db, db - 2.0 * d});
        }
        r.worst = worst;
        r.passed = worst <= o.tol;
        rows.push_back(r);

        auto s = row(chain, "submultiplicative", "s,t<=" + std::to_string(o.horizon));
        worst = -1.0;
        for (std::size_t a = 0; a <= o.horizon; ++a) {
            for (std::size_t b = 0; b <= o.horizon; ++b) {
                worst = std::max(worst, prof.dbar_values[a + b] - prof.dbar_values[a] * prof.dbar_values[b]);
            }
        }
        s.worst = worst;
        s.passed = worst <= o.tol;
        rows.push_back(s);
    }

    // t_m <= tbar_m <= 2 t_m
    for (double eps : o.epsilons) {
        auto r = row(chain, "mixequivalent", "eps=" + fmt(eps));
        const auto tm = mixing_time(P, pi, eps);
        const auto tb = mixing_time(P, pi, eps, true);
        if (tm.unmixed() || tb.unmixed()) {
            r.applicable = false;
            r.detail = "unmixed";
        } else {
            r.passed = tm.value() <= tb.value() && tb.value() <= 2 * tm.value();
            r.detail = "t_m=" + std::to_string(tm.value()) + " tbar_m=" + std::to_string(tb.value());
        }
        rows.push_back(r);
    }

    // tbar_m of P^k equals ceil(tbar_m / k)
    if (aperiodic) {
        for (double eps : o.epsilons) {
            auto r = row(chain, "skeleton_identity", "eps=" + fmt(eps) + " k<=" + std::to_string(o.skeleton_k_max));
            const auto base = mixing_time(P, pi, eps, true).value();
            for (std::size_t k = 1; k <= o.skeleton_k_max; ++k) {
                const auto tk = mixing_time(skeleton(P, k), pi, eps, true).value();
                const std::size_t expect = (base + k - 1) / k;
                if (tk != expect) {
                    r.passed = false;
                    r.detail += "k=" + std::to_string(k) + ":" + std::to_string(tk) + "!=" + std::to_string(expect) + " ";
                }
            }
            rows.push_back(r);
        }
    } else {
        rows.push_back(skipped(chain, "skeleton_identity", "periodic"));
    }

    // lazy(P)^t = sum_s 2^-t C(t,s) P^s
    {
        auto r = row(chain, "binomial_lazy", "t<=" + std::to_string(o.binomial_t_max));
        const auto pw = powers_upto(P, o.binomial_t_max);
        const auto lz = powers_upto(lazy(P), o.binomial_t_max);
        double worst = 0.0;
        for (std::size_t t = 0; t <= o.binomial_t_max; ++t) {
            Matrix mix = Matrix::Zero(pw[0].rows(), pw[0].cols());
            for (std::size_t s = 0; s <= t; ++s) {
                const double w = std::exp(std::lgamma(t + 1.0) - std::lgamma(s + 1.0) - std::lgamma(t - s + 1.0) -
                                          static_cast<double>(t) * std::log(2.0));
                mix += w * pw[s];
            }
            worst = std::max(worst, (mix - lz[t]).cwiseAbs().maxCoeff());
        }
        r.worst = worst;
        r.passed = worst <= o.tol;
        rows.push_back(r);
    }

    // trace on the first half of the states
    if (n >= 2) {
        std::vector<std::size_t> states;
        for (std::size_t i = 0; i < (n + 1) / 2; ++i) states.push_back(i);
        const StateSet S(states);
        const TraceSpec spec{S};

        auto r = row(chain, "lazy_trace_commute", "S=" + to_string(S));
        const Matrix a = lazy(trace_exact(P, spec)).matrix();
        const Matrix b = trace_exact(lazy(P), spec).matrix();
        r.worst = (a - b).cwiseAbs().maxCoeff();
        r.passed = r.worst <= o.tol;
        rows.push_back(r);

        auto t = row(chain, "trace_properties", "S=" + to_string(S));
        const FiniteKernel tr = trace_exact(P, spec);
        const ProbVector piS = pi.restricted(S);
        const double resid = stationarity_residual(tr, piS);
        const bool rev = check_reversible(tr, piS, 1e-10);
        t.worst = resid;
        t.passed = resid <= 1e-10 && rev;
        t.detail = "residual=" + fmt(resid) + (rev ? " reversible" : " not-reversible");
        rows.push_back(t);
    }

    // lazy hitting times are exactly twice the originals; geometric tail bound
    if (n <= 16) {
        const double alpha = 0.25;
        auto r = row(chain, "lazy_hitting", "alpha=0.25");
        const double tH = max_hitting_time(P, pi, alpha).t_H;
        const double lH = max_hitting_time(lazy(P), pi, alpha).t_H;
        r.worst = std::abs(lH - 2.0 * tH);
        r.passed = tH <= lH + 1e-9 && r.worst <= 1e-8 * std::max(1.0, tH);
        r.detail = "t_H=" + fmt(tH) + " l_H=" + fmt(lH);
        rows.push_back(r);

        auto s = row(chain, "hitting_tail", "alpha=0.25 k<=3");
        const auto tg = large_hitting_time(P, pi, alpha).tau_g;
        double worst = -1.0;
        for (const auto& A : minimal_feasible_sets(pi, alpha)) {
            const auto h = hitting_moments(P, A, 3 * tg);
            for (std::size_t x = 0; x < n; ++x) {
                for (std::size_t k = 1; k <= 3; ++k) {
                    const double tail = 1.0 - h.cdf[x][k * tg];
                    worst = std::max(worst, tail - std::pow(0.1, static_cast<double>(k)));
                }
            }
        }
        s.worst = worst;
        s.passed = worst <= 1e-12;
        rows.push_back(s);

        auto c = row(chain, "easy_direction", "alpha=0.25");
        const auto cert = easy_direction_certificate(P, pi, alpha);
        c.passed = cert.passed;
        c.worst = cert.hitting_bound > 0 ? cert.lazy_t_H / cert.hitting_bound : 0.0;
        c.detail = "l_H=" + fmt(cert.lazy_t_H) + " bound=" + fmt(cert.hitting_bound) + " t_L=" + std::to_string(cert.t_L);
        rows.push_back(c);
    }
    return rows;
}

std::vector<PerturbationRow> perturbation_study(const ZooChain& chain, double alpha) {
    std::vector<PerturbationRow> out;
    const auto& P = chain.kernel;
    const auto& pi = chain.pi;
    if (!is_aperiodic(P)) return out;

    const auto tm = mixing_time(P, pi).value();
    {
        PerturbationRow r;
        r.chain_id = chain.id;
        r.kind = "mixing";
        r.delta = 1.0 / (256.0 * static_cast<double>(tm));
        const auto Q = perturb_within(P, r.delta);
        const auto tq = mixing_time(Q, stationary_distribution(Q)).value();
        r.base = static_cast<double>(tm);
        r.perturbed = static_cast<double>(tq);
        r.lower = r.base / 4.0;
        r.upper = 4.0 * r.base;
        r.passed = r.lower <= r.perturbed && r.perturbed <= r.upper;
        out.push_back(r);
    }
    if (P.size() <= 16) {
        PerturbationRow r;
        r.chain_id = chain.id;
        r.kind = "hitting";
        const double tH = max_hitting_time(P, pi, alpha).t_H;
        r.delta = 1.0 / (30.0 * tH);
        const auto Q = perturb_within(P, r.delta);
        r.base = tH;
        r.perturbed = max_hitting_time(Q, stationary_distribution(Q), alpha).t_H;
        r.lower = 0.0;
        r.upper = 60.0 * tH;
        r.passed = r.perturbed <= r.upper;
        out.push_back(r);
    }
    return out;
}

}  // namespace mixhit
