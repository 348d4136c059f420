#include "mixhit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>

#include "mixhit/asf.hpp"
#include "mixhit/audits.hpp"
#include "mixhit/errors.hpp"
#include "mixhit/estimators.hpp"
#include "mixhit/kernel_core.hpp"
#include "mixhit/samplers.hpp"
#include "mixhit/times.hpp"
#include "mixhit/transforms.hpp"
#include "mixhit/zoo.hpp"

#ifndef MIXHIT_VERSION
#define MIXHIT_VERSION "0.0.0"
#endif

namespace mixhit {

namespace {

std::vector<ResultTable> equivalence_sweep(const RunConfig& cfg) {
    ResultTable t{"equivalence_sweep", kEquivalenceColumns, {}};
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    std::size_t defined = 0, undefined = 0;
    std::string argmin, argmax;
    for (const auto& spec : cfg.chains) {
        const auto chain = build_zoo_chain(spec);
        for (double alpha : cfg.alphas) {
            const auto r = equivalence_report(chain.kernel.with_stationary(chain.pi), alpha, cfg.epsilon);
            t.add_row(equivalence_row(chain.id, r));
            if (alpha != 0.25 || !r.reversible) continue;
            // lazy ratio; periodic chains included
            if (!r.t_L.unmixed()) {
                const double ratio = static_cast<double>(r.t_L.value()) / std::max(r.t_H, 1.0);
                ++defined;
                if (ratio < rmin) rmin = ratio, argmin = chain.id;
                if (ratio > rmax) rmax = ratio, argmax = chain.id;
            } else {
                ++undefined;
            }
        }
    }
    ResultTable head{"ratio_interval", {"alpha", "chains_with_ratio", "chains_undefined", "r_min", "r_min_chain", "r_max", "r_max_chain"}, {}};
    if (defined > 0) {
        head.add_row({"0.25", std::to_string(defined), std::to_string(undefined), format_number(rmin), argmin,
                      format_number(rmax), argmax});
    } else {
        head.add_row({"0.25", "0", std::to_string(undefined), "undefined", "", "undefined", ""});
    }
    return {t, head};
}

std::vector<ResultTable> inequality_audit(const RunConfig& cfg) {
    ResultTable t{"inequality_audit", {"chain_id", "check", "parameters", "applicable", "passed", "worst", "detail"}, {}};
    for (const auto& spec : cfg.chains) {
        const auto chain = build_zoo_chain(spec);
        for (const auto& r : audit_chain(chain)) {
            t.add_row({r.chain_id, r.check, r.parameters, format_bool(r.applicable), format_bool(r.passed),
                       format_number(r.worst), r.detail});
        }
    }
    return {t};
}

std::vector<ResultTable> perturbation(const RunConfig& cfg) {
    ResultTable t{"perturbation_study", {"chain_id", "kind", "delta", "base", "perturbed", "lower", "upper", "passed"}, {}};
    for (const auto& spec : cfg.chains) {
        const auto chain = build_zoo_chain(spec);
        for (const auto& r : perturbation_study(chain)) {
            t.add_row({r.chain_id, r.kind, format_number(r.delta), format_number(r.base), format_number(r.perturbed),
                       format_number(r.lower), format_number(r.upper), format_bool(r.passed)});
        }
    }
    return {t};
}

// Finite MH fixture used by the ASF study: gamma is computed exactly.
double finite_mh_gamma(const std::vector<double>& w) {
    const std::size_t n = w.size();
    double gamma = 1.0;
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            if (y != x) acc += std::min(1.0, w[y] / w[x]);
        }
        gamma = std::min(gamma, acc / static_cast<double>(n - 1));
    }
    return gamma;
}

std::vector<ResultTable> asf_study(const RunConfig& cfg, std::uint64_t seed) {
    ResultTable t{"asf_study",
                  {"flavor", "d", "k", "n", "frequency", "wilson_halfwidth", "bound", "intermediate_bound", "pass"},
                  {}};
    for (std::size_t d = 2; d <= 4; ++d) {
        const auto k = static_cast<std::size_t>(std::ceil(4.0 * static_cast<double>(d) * std::log(10.0 * static_cast<double>(d))));
        const auto r = coupon_and_p_probe(d, k, cfg.asf_samples, ProbeFlavor::lazy_gibbs, seed + d);
        t.add_row({"lazy_gibbs", std::to_string(d), std::to_string(k), std::to_string(cfg.asf_samples),
                   format_number(r.frequency.point), format_number(r.frequency.halfwidth), format_number(r.bound),
                   r.intermediate_bound ? format_number(*r.intermediate_bound) : "", format_bool(r.pass)});
    }
    const std::vector<double> w{1.0, 2.0, 4.0, 8.0};
    const double gamma = finite_mh_gamma(w);
    const auto mh = make_finite_mh(w);
    std::vector<std::size_t> starts{0, 1, 2, 3};
    for (std::size_t k : {1, 2, 4, 8}) {
        const auto dec = asf_decompose(mh, k, starts, cfg.asf_samples, seed + 100 + k);
        const double bound = mh_asf_bound(gamma, k);
        const bool pass = dec.p_estimate.point - 3.0 * dec.p_estimate.halfwidth <= bound;
        t.add_row({"mh_finite", "1", std::to_string(k), std::to_string(cfg.asf_samples), format_number(dec.p_estimate.point),
                   format_number(dec.p_estimate.halfwidth), format_number(bound), "", format_bool(pass)});
    }
    return {t};
}

std::vector<ResultTable> sampler_fidelity(const RunConfig& cfg, std::uint64_t seed) {
    ResultTable t{"sampler_fidelity",
                  {"chain_id", "mode", "start", "n", "tv", "kolmogorov", "dkw_band", "within_band"},
                  {}};
    std::uint64_t stream = 0;
    for (const auto& spec : cfg.fidelity_chains) {
        const auto chain = build_zoo_chain(spec);
        const auto& P = chain.kernel;
        const auto base = finite_sampler(P);
        const std::size_t n = P.size();
        std::vector<std::size_t> half;
        for (std::size_t i = 0; i < (n + 1) / 2; ++i) half.push_back(i);
        const StateSet S(half);

        struct Mode {
            std::string name;
            TimeChange<std::size_t> change;
            FiniteKernel exact;
            std::size_t starts;
        };
        std::vector<Mode> modes;
        modes.push_back({"lazy", TimeChange<std::size_t>::lazy_mode(), lazy(P), n});
        for (std::size_t k = 1; k <= 4; ++k) {
            modes.push_back({"skeleton(" + std::to_string(k) + ")", TimeChange<std::size_t>::skeleton_mode(k), skeleton(P, k), n});
        }
        const auto in_S = S.indicator(n);
        modes.push_back({"trace" + to_string(S),
                         TimeChange<std::size_t>::trace_mode([in_S](const std::size_t& x) { return static_cast<bool>(in_S[x]); }),
                         trace_exact(P, TraceSpec{S}), S.states().size()});
        for (std::size_t k = 1; k <= 3; ++k) {
            modes.push_back({"G(" + std::to_string(k) + ")", TimeChange<std::size_t>::G_mode(k), build_G(P, k), n});
        }
        for (const auto& m : modes) {
            const auto sampler = apply_time_change(base, m.change);
            for (std::size_t x = 0; x < m.starts; ++x) {
                const ProbVector exact(m.exact.row(x));
                const auto e = empirical_tv_vs_exact(sampler, x, exact, cfg.fidelity_samples, seed + (stream++));
                t.add_row({chain.id, m.name, std::to_string(x), std::to_string(cfg.fidelity_samples),
                           format_number(e.tv.point), format_number(e.kolmogorov), format_number(e.band),
                           format_bool(e.kolmogorov_within_band())});
            }
        }
    }
    return {t};
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::uint64_t experiment_seed(std::uint64_t base, const std::string& name) {
    std::uint64_t h = 0;
    for (unsigned char c : name) h = mix64(h ^ c);
    return mix64(base ^ h);
}

std::vector<ResultTable> run_single_experiment(const std::string& name, const RunConfig& cfg) {
    const auto seed = experiment_seed(cfg.seed, name);
    if (name == "equivalence-sweep") return equivalence_sweep(cfg);
    if (name == "inequality-audit") return inequality_audit(cfg);
    if (name == "perturbation-study") return perturbation(cfg);
    if (name == "asf-study") return asf_study(cfg, seed);
    if (name == "sampler-fidelity") return sampler_fidelity(cfg, seed);
    throw ConfigError("unknown experiment '" + name + "'");
}

bool RunManifest::any_failed() const {
    for (const auto& o : outputs) {
        if (o.status == "failed") return true;
    }
    return false;
}

bool RunManifest::audit_failed() const {
    for (const auto& o : outputs) {
        if (o.status == "audit-failed") return true;
    }
    return false;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["version"] = version;
    j["timestamp"] = timestamp;
    j["outputs"] = nlohmann::json::array();
    for (const auto& o : outputs) {
        nlohmann::json e;
        e["experiment"] = o.experiment;
        e["status"] = o.status;
        if (!o.error.empty()) e["error"] = o.error;
        e["files"] = o.files;
        e["seconds"] = o.seconds;
        j["outputs"].push_back(e);
    }
    return j;
}

namespace {

// A table fails the audit if it has a false cell in a pass/fail column on an applicable row.
bool table_has_failure(const ResultTable& t) {
    std::size_t applicable = t.columns.size();
    std::vector<std::size_t> flags;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        const auto& c = t.columns[i];
        if (c == "applicable") applicable = i;
        if (c == "passed" || c == "pass" || c == "within_band" || c == "maxlarge_ok" || c == "certificate_ok") flags.push_back(i);
    }
    for (const auto& r : t.rows) {
        if (applicable < r.size() && r[applicable] == "false") continue;
        for (auto f : flags) {
            if (r[f] == "false") return true;
        }
    }
    return false;
}

}  // namespace

RunManifest run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    RunManifest m;
    m.config_hash = fnv1a_hex(cfg.source_text);
    m.seed = cfg.seed;
    m.version = MIXHIT_VERSION;
    m.timestamp = utc_timestamp();

    nlohmann::json all = nlohmann::json::array();
    for (const auto& name : cfg.experiments) {
        ExperimentOutput out;
        out.experiment = name;
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto tables = run_single_experiment(name, cfg);
            bool failed = false;
            for (const auto& t : tables) {
                const auto file = t.name + ".csv";
                write_text_file(out_dir / file, t.to_csv());
                out.files.push_back(file);
                all.push_back(t.to_json());
                failed = failed || table_has_failure(t);
                if (t.name == "equivalence_sweep") {
                    const auto plot = ratio_vs_n_plot(t);
                    const auto pfile = plot.name + ".plot.csv";
                    write_text_file(out_dir / pfile, plot.to_csv());
                    out.files.push_back(pfile);
                }
            }
            out.status = failed ? "audit-failed" : "ok";
        } catch (const std::exception& e) {
            out.status = "failed";
            out.error = e.what();
        }
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        m.outputs.push_back(out);
    }
    write_text_file(out_dir / "results.json", all.dump(2) + "\n");
    write_text_file(out_dir / "manifest.json", m.to_json().dump(2) + "\n");
    return m;
}

}  // namespace mixhit
