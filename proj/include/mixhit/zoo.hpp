#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixhit/finite_kernel.hpp"
#include "mixhit/prob_vector.hpp"

namespace mixhit {

enum class ZooKind { cycle, hypercube, birth_death, ehrenfest, random_reversible, flip, lazy_uniform };

struct ZooSpec {
    ZooKind kind = ZooKind::flip;
    std::size_t size = 0;          // n for cycle/ehrenfest/lazy_uniform/random_reversible, d for hypercube
    std::vector<double> weights;   // birth_death
    std::uint64_t seed = 0;        // random_reversible

    // "cycle(8)", "hypercube(3)", "birth_death(1,2,1)", "ehrenfest(6)",
    // "random_reversible(6,42)", "flip", "lazy_uniform(4)".
    static ZooSpec parse(const std::string& text);
    std::string to_string() const;
};

struct ZooChain {
    std::string id;
    ZooSpec spec;
    FiniteKernel kernel;
    ProbVector pi;  // exact, from the construction
};

ZooChain build_zoo_chain(const ZooSpec& spec);
ZooChain build_zoo_chain(const std::string& text);

std::vector<ZooSpec> default_zoo_specs();
std::vector<ZooChain> default_zoo();

// name and parameter signature of each kind, for `zoo list`
std::vector<std::pair<std::string, std::string>> zoo_kinds();

}  // namespace mixhit
