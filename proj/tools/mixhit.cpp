#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "mixhit/config.hpp"
#include "mixhit/errors.hpp"
#include "mixhit/experiments.hpp"
#include "mixhit/kernel_core.hpp"
#include "mixhit/kernel_io.hpp"
#include "mixhit/report.hpp"
#include "mixhit/times.hpp"
#include "mixhit/zoo.hpp"

namespace fs = std::filesystem;
using namespace mixhit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAudit = 3;

void apply_thread_override() {
    const char* env = std::getenv("MIXHIT_THREADS");
    if (!env || !*env) return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) throw ConfigError("MIXHIT_THREADS must be a positive integer, got '" + std::string(env) + "'");
    omp_set_num_threads(static_cast<int>(n));
}

std::string mixing_text(const MixingResult& m) { return m.unmixed() ? "unmixed" : std::to_string(m.value()); }

nlohmann::json report_json(const EquivalenceReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["alpha"] = r.alpha;
    j["epsilon"] = r.epsilon;
    j["t_m"] = mixing_text(r.t_m);
    j["t_bar_m"] = mixing_text(r.t_bar_m);
    j["t_L"] = mixing_text(r.t_L);
    j["t_H"] = r.t_H;
    j["tau_g"] = r.tau_g;
    j["witness_set"] = to_string(r.witness_set);
    j["witness_start"] = r.witness_start;
    j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json("undefined");
    j["maxlarge_ok"] = r.maxlarge_ok;
    j["mixequivalent_ok"] = r.mixequivalent_ok;
    j["reversible"] = r.reversible;
    j["certificate"] = {{"vacuous", r.certificate.vacuous},     {"C", r.certificate.C},
                        {"k0", r.certificate.k0},               {"t_L", r.certificate.t_L},
                        {"lazy_t_H", r.certificate.lazy_t_H},   {"bound", r.certificate.hitting_bound},
                        {"passed", r.certificate.passed}};
    j["warnings"] = r.warnings;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixhit: mixing and hitting times of finite Markov chains"};
    app.require_subcommand(1);
    app.set_version_flag("--version", MIXHIT_VERSION);

    auto* analyze = app.add_subcommand("analyze", "equivalence report for a kernel file (text or JSON)");
    std::string kernel_file;
    double alpha = 0.25, epsilon = 0.25;
    std::string analyze_format = "text";
    analyze->add_option("kernel-file", kernel_file)->required();
    analyze->add_option("--alpha", alpha)->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--epsilon", epsilon)->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--format", analyze_format)->check(CLI::IsMember({"text", "json"}));

    auto* zoo = app.add_subcommand("zoo", "chain zoo");
    zoo->require_subcommand(1);
    auto* zoo_list = zoo->add_subcommand("list", "list chain kinds and the default zoo");
    auto* zoo_build = zoo->add_subcommand("build", "print a zoo chain as JSON");
    std::string zoo_spec, zoo_out;
    zoo_build->add_option("spec", zoo_spec)->required();
    zoo_build->add_option("--out", zoo_out, "write to a file instead of stdout");

    auto* run = app.add_subcommand("run", "run the experiments named in a config file");
    std::string config_file, out_dir = "mixhit-run";
    std::uint64_t seed = 0;
    run->add_option("config", config_file)->required();
    auto* seed_opt = run->add_option("--seed", seed, "overrides [seeds].base");
    run->add_option("--out", out_dir);

    auto* report = app.add_subcommand("report", "re-emit the results of a run directory");
    std::string run_dir, report_format = "csv";
    report->add_option("run-dir", run_dir)->required();
    report->add_option("--format", report_format)->check(CLI::IsMember({"csv", "json", "plotdata"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        apply_thread_override();

        if (*analyze) {
            const auto kernel = load_kernel(kernel_file);
            const auto r = equivalence_report(kernel, alpha, epsilon);
            if (analyze_format == "json") {
                std::cout << report_json(r).dump(2) << "\n";
            } else {
                std::cout << "states        " << r.n << "\n"
                          << "alpha         " << format_number(r.alpha) << "\n"
                          << "epsilon       " << format_number(r.epsilon) << "\n"
                          << "t_m           " << mixing_text(r.t_m) << "\n"
                          << "t_bar_m       " << mixing_text(r.t_bar_m) << "\n"
                          << "t_L           " << mixing_text(r.t_L) << "\n"
                          << "t_H           " << format_number(r.t_H) << "  set " << to_string(r.witness_set)
                          << " from " << r.witness_start << "\n"
                          << "tau_g         " << r.tau_g << "\n"
                          << "ratio t_L/t_H " << (r.ratio ? format_number(*r.ratio) : "undefined") << "\n"
                          << "maxlarge_ok   " << format_bool(r.maxlarge_ok) << "\n"
                          << "certificate   " << (r.certificate.vacuous ? "vacuous" : format_bool(r.certificate.passed))
                          << "\n";
                for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
            }
            return (r.maxlarge_ok && r.certificate.passed) ? kExitOk : kExitAudit;
        }

        if (*zoo_list) {
            std::cout << "kinds:\n";
            for (const auto& [name, sig] : zoo_kinds()) std::cout << "  " << sig << "\n";
            std::cout << "default zoo:\n";
            for (const auto& s : default_zoo_specs()) std::cout << "  " << s.to_string() << "\n";
            return kExitOk;
        }
        if (*zoo_build) {
            const auto chain = build_zoo_chain(zoo_spec);
            auto j = kernel_to_json(chain.kernel);
            j["id"] = chain.id;
            if (zoo_out.empty()) {
                std::cout << j.dump(2) << "\n";
            } else {
                save_kernel(zoo_out, chain.kernel);
            }
            return kExitOk;
        }

        if (*run) {
            auto cfg = load_config(config_file);
            if (*seed_opt) cfg.seed = seed;
            const auto m = run_experiment(cfg, out_dir);
            for (const auto& o : m.outputs) {
                std::cout << o.experiment << ": " << o.status;
                if (!o.error.empty()) std::cout << " (" << o.error << ")";
                std::cout << "\n";
            }
            std::cout << "manifest: " << (fs::path(out_dir) / "manifest.json").string() << "\n";
            if (m.any_failed()) return kExitError;
            return m.audit_failed() ? kExitAudit : kExitOk;
        }

        if (*report) {
            const auto results = nlohmann::json::parse(read_text_file(fs::path(run_dir) / "results.json"));
            std::vector<ResultTable> tables;
            for (const auto& t : results) tables.push_back(ResultTable::from_json(t));
            const auto files = emit_report(tables, parse_report_format(report_format), fs::path(run_dir) / "report");
            for (const auto& f : files) std::cout << f.string() << "\n";
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
