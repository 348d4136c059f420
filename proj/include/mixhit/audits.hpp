#pragma once

#include <string>
#include <vector>

#include "mixhit/zoo.hpp"

namespace mixhit {

struct AuditRow {
    std::string chain_id;
    std::string check;
    std::string parameters;
    bool applicable = true;  // false rows are skipped checks (e.g. periodic chains)
    bool passed = true;
    double worst = 0.0;      // largest violation margin seen, or the compared quantity
    std::string detail;
};

struct AuditOptions {
    std::vector<double> alphas{0.1, 0.25, 0.4};
    std::vector<double> epsilons{0.25, 0.125};
    std::size_t horizon = 25;
    std::size_t skeleton_k_max = 10;
    std::size_t binomial_t_max = 20;
    double tol = 1e-10;
};

std::vector<AuditRow> audit_chain(const ZooChain& chain, const AuditOptions& options = {});

// Perturbation study rows for one chain (aperiodic chains only).
struct PerturbationRow {
    std::string chain_id;
    std::string kind;  // "mixing" or "hitting"
    double delta = 0.0;
    double base = 0.0;
    double perturbed = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool passed = false;
};

std::vector<PerturbationRow> perturbation_study(const ZooChain& chain, double alpha = 0.25);

}  // namespace mixhit
