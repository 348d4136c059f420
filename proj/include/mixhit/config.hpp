#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mixhit {

inline const std::vector<std::string> kExperimentNames = {
    "equivalence-sweep", "inequality-audit", "perturbation-study", "asf-study", "sampler-fidelity"};

struct RunConfig {
    std::vector<std::string> chains;       // zoo specs, after expanding "default"
    std::vector<std::string> experiments;  // in run order
    std::vector<double> alphas{0.25};
    double epsilon = 0.25;
    std::uint64_t seed = 1;
    std::size_t fidelity_samples = 100'000;
    std::size_t asf_samples = 100'000;
    std::vector<std::string> fidelity_chains{"flip", "birth_death(1,2,1)", "random_reversible(6,1)"};
    std::string source_text;
};

// Throws ConfigError carrying "<source>:<line>: <field>: <message>".
RunConfig parse_config(const std::string& text, const std::string& source_name = "config");
RunConfig load_config(const std::filesystem::path& path);

// FNV-1a, 64 bit, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace mixhit
