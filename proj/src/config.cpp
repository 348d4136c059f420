#include "mixhit/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "mixhit/errors.hpp"
#include "mixhit/zoo.hpp"

namespace mixhit {

namespace {

struct Ctx {
    std::string source;

    [[noreturn]] void fail(const toml::node* node, const std::string& field, const std::string& msg) const {
        std::ostringstream os;
        os << source;
        if (node && node->source().begin.line > 0) os << ":" << node->source().begin.line;
        os << ": " << field << ": " << msg;
        throw ConfigError(os.str());
    }

    void check_keys(const toml::table& t, const std::string& where, const std::set<std::string>& allowed) const {
        for (const auto& [k, v] : t) {
            if (!allowed.count(std::string(k.str()))) fail(&v, where + "." + std::string(k.str()), "unknown key");
        }
    }

    std::vector<std::string> strings(const toml::node& n, const std::string& field) const {
        const auto* arr = n.as_array();
        if (!arr) fail(&n, field, "expected an array of strings");
        std::vector<std::string> out;
        for (const auto& e : *arr) {
            const auto s = e.value<std::string>();
            if (!s) fail(&e, field, "expected a string");
            out.push_back(*s);
        }
        return out;
    }

    double number(const toml::node& n, const std::string& field) const {
        if (const auto d = n.value<double>()) return *d;
        fail(&n, field, "expected a number");
    }

    std::uint64_t count(const toml::node& n, const std::string& field) const {
        const auto i = n.value<std::int64_t>();
        if (!i || *i < 0) fail(&n, field, "expected a non-negative integer");
        return static_cast<std::uint64_t>(*i);
    }
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source_name) {
    Ctx ctx{source_name};
    toml::table root;
    try {
        root = toml::parse(text, source_name);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << source_name << ":" << e.source().begin.line << ": syntax: " << e.description();
        throw ConfigError(os.str());
    }
    ctx.check_keys(root, "", {"chains", "experiments", "seeds"});

    RunConfig cfg;
    cfg.source_text = text;
    cfg.chains.clear();
    cfg.experiments.clear();

    if (const auto* chains = root["chains"].as_table()) {
        ctx.check_keys(*chains, "chains", {"zoo", "specs"});
        if (const auto* z = chains->get("zoo")) {
            const auto v = z->value<std::string>();
            if (!v || (*v != "default" && *v != "none")) ctx.fail(z, "chains.zoo", "expected \"default\" or \"none\"");
            if (*v == "default") {
                for (const auto& s : default_zoo_specs()) cfg.chains.push_back(s.to_string());
            }
        }
        if (const auto* s = chains->get("specs")) {
            const auto list = ctx.strings(*s, "chains.specs");
            const auto* arr = s->as_array();
            for (std::size_t i = 0; i < list.size(); ++i) {
                try {
                    build_zoo_chain(list[i]);
                } catch (const Error& e) {
                    ctx.fail(arr->get(i), "chains.specs[" + std::to_string(i) + "]", e.what());
                }
                cfg.chains.push_back(list[i]);
            }
        }
    } else if (root.contains("chains")) {
        ctx.fail(root.get("chains"), "chains", "expected a table");
    } else {
        for (const auto& s : default_zoo_specs()) cfg.chains.push_back(s.to_string());
    }

    if (const auto* ex = root["experiments"].as_table()) {
        std::set<std::string> allowed{"run", "alphas", "epsilon"};
        for (const auto& n : kExperimentNames) allowed.insert(n);
        ctx.check_keys(*ex, "experiments", allowed);
        if (const auto* run = ex->get("run")) {
            const auto list = ctx.strings(*run, "experiments.run");
            const auto* arr = run->as_array();
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (std::find(kExperimentNames.begin(), kExperimentNames.end(), list[i]) == kExperimentNames.end()) {
                    ctx.fail(arr->get(i), "experiments.run[" + std::to_string(i) + "]", "unknown experiment '" + list[i] + "'");
                }
                cfg.experiments.push_back(list[i]);
            }
        }
        if (const auto* a = ex->get("alphas")) {
            const auto* arr = a->as_array();
            if (!arr || arr->empty()) ctx.fail(a, "experiments.alphas", "expected a non-empty array of numbers");
            cfg.alphas.clear();
            for (const auto& e : *arr) {
                const double v = ctx.number(e, "experiments.alphas");
                if (!(v > 0.0 && v < 0.5)) ctx.fail(&e, "experiments.alphas", "alpha must lie in (0, 1/2)");
                cfg.alphas.push_back(v);
            }
        }
        if (const auto* e = ex->get("epsilon")) {
            cfg.epsilon = ctx.number(*e, "experiments.epsilon");
            if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) ctx.fail(e, "experiments.epsilon", "must lie in (0, 1)");
        }
        if (const auto* f = ex->get("sampler-fidelity")) {
            const auto* t = f->as_table();
            if (!t) ctx.fail(f, "experiments.sampler-fidelity", "expected a table");
            ctx.check_keys(*t, "experiments.sampler-fidelity", {"samples", "chains"});
            if (const auto* s = t->get("samples")) cfg.fidelity_samples = ctx.count(*s, "experiments.sampler-fidelity.samples");
            if (const auto* c = t->get("chains")) cfg.fidelity_chains = ctx.strings(*c, "experiments.sampler-fidelity.chains");
            if (cfg.fidelity_samples == 0) ctx.fail(f, "experiments.sampler-fidelity.samples", "must be positive");
        }
        if (const auto* f = ex->get("asf-study")) {
            const auto* t = f->as_table();
            if (!t) ctx.fail(f, "experiments.asf-study", "expected a table");
            ctx.check_keys(*t, "experiments.asf-study", {"samples"});
            if (const auto* s = t->get("samples")) cfg.asf_samples = ctx.count(*s, "experiments.asf-study.samples");
            if (cfg.asf_samples < 1000) ctx.fail(f, "experiments.asf-study.samples", "must be at least 1000");
        }
        for (const auto& n : {"equivalence-sweep", "inequality-audit", "perturbation-study"}) {
            if (const auto* f = ex->get(n)) ctx.fail(f, std::string("experiments.") + n, "takes no options");
        }
    } else if (root.contains("experiments")) {
        ctx.fail(root.get("experiments"), "experiments", "expected a table");
    }

    if (const auto* seeds = root["seeds"].as_table()) {
        ctx.check_keys(*seeds, "seeds", {"base"});
        if (const auto* b = seeds->get("base")) cfg.seed = ctx.count(*b, "seeds.base");
    } else if (root.contains("seeds")) {
        ctx.fail(root.get("seeds"), "seeds", "expected a table");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace mixhit
