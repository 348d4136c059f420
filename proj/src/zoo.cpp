#include "mixhit/zoo.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "mixhit/errors.hpp"
#include "mixhit/random.hpp"

namespace mixhit {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& tok, const std::string& whole) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("zoo spec '" + whole + "': bad number '" + tok + "'");
    }
}

std::size_t parse_count(const std::string& tok, const std::string& whole) {
    const double v = parse_number(tok, whole);
    if (v < 0 || v != std::floor(v)) throw ParseError("zoo spec '" + whole + "': expected a non-negative integer, got '" + tok + "'");
    return static_cast<std::size_t>(v);
}

Matrix zeros(std::size_t n) { return Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)); }

// Nearest-neighbour Metropolis walk on {0..n-1} targeting w.
Matrix metropolis_path(const std::vector<double>& w) {
    const std::size_t n = w.size();
    Matrix p = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        double moved = 0.0;
        for (int dir : {-1, 1}) {
            if ((dir < 0 && i == 0) || (dir > 0 && i + 1 == n)) continue;
            const std::size_t j = dir < 0 ? i - 1 : i + 1;
            const double a = 0.5 * std::min(1.0, w[j] / w[i]);
            p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a;
            moved += a;
        }
        p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0 - moved;
    }
    return p;
}

std::vector<double> normalized(std::vector<double> w) {
    double s = 0.0;
    for (double x : w) s += x;
    for (auto& x : w) x /= s;
    return w;
}

}  // namespace

ZooSpec ZooSpec::parse(const std::string& text) {
    const std::string s = trim(text);
    const auto open = s.find('(');
    std::string name = trim(open == std::string::npos ? s : s.substr(0, open));
    std::vector<std::string> args;
    if (open != std::string::npos) {
        if (s.back() != ')') throw ParseError("zoo spec '" + text + "': missing ')'");
        std::string inner = s.substr(open + 1, s.size() - open - 2);
        for (char& c : inner) {
            if (c == '[' || c == ']') c = ' ';
        }
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (!tok.empty()) args.push_back(tok);
        }
    }
    auto need = [&](std::size_t k) {
        if (args.size() != k) {
            throw ParseError("zoo spec '" + text + "': " + name + " takes " + std::to_string(k) + " argument(s)");
        }
    };
    ZooSpec spec;
    if (name == "flip") {
        need(0);
        spec.kind = ZooKind::flip;
        spec.size = 2;
    } else if (name == "cycle") {
        need(1);
        spec.kind = ZooKind::cycle;
        spec.size = parse_count(args[0], text);
    } else if (name == "hypercube") {
        need(1);
        spec.kind = ZooKind::hypercube;
        spec.size = parse_count(args[0], text);
    } else if (name == "ehrenfest") {
        need(1);
        spec.kind = ZooKind::ehrenfest;
        spec.size = parse_count(args[0], text);
    } else if (name == "lazy_uniform") {
        need(1);
        spec.kind = ZooKind::lazy_uniform;
        spec.size = parse_count(args[0], text);
    } else if (name == "random_reversible") {
        need(2);
        spec.kind = ZooKind::random_reversible;
        spec.size = parse_count(args[0], text);
        spec.seed = parse_count(args[1], text);
    } else if (name == "birth_death") {
        if (args.empty()) throw ParseError("zoo spec '" + text + "': birth_death needs weights");
        spec.kind = ZooKind::birth_death;
        for (const auto& a : args) spec.weights.push_back(parse_number(a, text));
        spec.size = spec.weights.size();
    } else {
        throw ParseError("zoo spec '" + text + "': unknown kind '" + name + "'");
    }
    return spec;
}

std::string ZooSpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case ZooKind::flip: return "flip";
        case ZooKind::cycle: os << "cycle(" << size << ")"; break;
        case ZooKind::hypercube: os << "hypercube(" << size << ")"; break;
        case ZooKind::ehrenfest: os << "ehrenfest(" << size << ")"; break;
        case ZooKind::lazy_uniform: os << "lazy_uniform(" << size << ")"; break;
        case ZooKind::random_reversible: os << "random_reversible(" << size << "," << seed << ")"; break;
        case ZooKind::birth_death:
            os << "birth_death(";
            for (std::size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
            os << ")";
            break;
    }
    return os.str();
}

ZooChain build_zoo_chain(const ZooSpec& spec) {
    Matrix p;
    std::vector<double> pi;
    std::vector<std::string> labels;
    auto at = [&p](std::size_t i, std::size_t j) -> double& {
        return p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    };
    switch (spec.kind) {
        case ZooKind::flip:
            p = zeros(2);
            at(0, 1) = at(1, 0) = 1.0;
            pi = {0.5, 0.5};
            break;
        case ZooKind::cycle: {
            const std::size_t n = spec.size;
            if (n < 3) throw InvalidArgument("cycle(n) needs n >= 3");
            p = zeros(n);
            for (std::size_t i = 0; i < n; ++i) {
                at(i, (i + 1) % n) += 0.5;
                at(i, (i + n - 1) % n) += 0.5;
            }
            pi.assign(n, 1.0 / static_cast<double>(n));
            break;
        }
        case ZooKind::hypercube: {
            const std::size_t d = spec.size;
            if (d < 1 || d > 20) throw InvalidArgument("hypercube(d) needs 1 <= d <= 20");
            const std::size_t n = std::size_t{1} << d;
            p = zeros(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t b = 0; b < d; ++b) at(i, i ^ (std::size_t{1} << b)) = 1.0 / static_cast<double>(d);
            }
            pi.assign(n, 1.0 / static_cast<double>(n));
            break;
        }
        case ZooKind::ehrenfest: {
            const std::size_t m = spec.size;
            if (m < 1) throw InvalidArgument("ehrenfest(n) needs n >= 1");
            p = zeros(m + 1);
            const double mm = static_cast<double>(m);
            for (std::size_t k = 0; k <= m; ++k) {
                if (k > 0) at(k, k - 1) = static_cast<double>(k) / mm;
                if (k < m) at(k, k + 1) = static_cast<double>(m - k) / mm;
            }
            pi.resize(m + 1);
            for (std::size_t k = 0; k <= m; ++k) {
                pi[k] = std::exp(std::lgamma(mm + 1) - std::lgamma(static_cast<double>(k) + 1) -
                                 std::lgamma(static_cast<double>(m - k) + 1) - mm * std::log(2.0));
            }
            pi = normalized(pi);
            break;
        }
        case ZooKind::lazy_uniform: {
            const std::size_t n = spec.size;
            if (n < 1) throw InvalidArgument("lazy_uniform(n) needs n >= 1");
            p = Matrix::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), 0.5 / static_cast<double>(n));
            for (std::size_t i = 0; i < n; ++i) at(i, i) += 0.5;
            pi.assign(n, 1.0 / static_cast<double>(n));
            break;
        }
        case ZooKind::birth_death: {
            if (spec.weights.size() < 2) throw InvalidArgument("birth_death needs at least two weights");
            for (double w : spec.weights) {
                if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("birth_death weights must be positive");
            }
            p = metropolis_path(spec.weights);
            pi = normalized(spec.weights);
            break;
        }
        case ZooKind::random_reversible: {
            const std::size_t n = spec.size;
            if (n < 2) throw InvalidArgument("random_reversible(n, seed) needs n >= 2");
            RandomStream rng(spec.seed, 0x7a6f6fULL);
            std::vector<double> w(n);
            for (auto& x : w) x = 0.5 + 1.5 * rng.uniform_open();
            p = zeros(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double q = rng.uniform_open() / static_cast<double>(n);
                    at(i, j) = q * std::min(1.0, w[j] / w[i]);
                    at(j, i) = q * std::min(1.0, w[i] / w[j]);
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                double off = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != i) off += at(i, j);
                }
                at(i, i) = 1.0 - off;
            }
            pi = normalized(w);
            break;
        }
    }
    ProbVector pv(pi);
    FiniteKernel kernel(std::move(p), {}, pv);
    return {spec.to_string(), spec, std::move(kernel), std::move(pv)};
}

ZooChain build_zoo_chain(const std::string& text) { return build_zoo_chain(ZooSpec::parse(text)); }

std::vector<ZooSpec> default_zoo_specs() {
    std::vector<std::string> names = {"flip", "lazy_uniform(4)"};
    for (int n = 5; n <= 12; ++n) names.push_back("cycle(" + std::to_string(n) + ")");
    for (int d = 2; d <= 4; ++d) names.push_back("hypercube(" + std::to_string(d) + ")");
    names.push_back("ehrenfest(6)");
    names.push_back("birth_death(1,2,1)");
    names.push_back("birth_death(1,2,4,8,4,2,1)");
    for (int s = 1; s <= 4; ++s) names.push_back("random_reversible(" + std::to_string(4 + 2 * s) + "," + std::to_string(s) + ")");
    std::vector<ZooSpec> out;
    for (const auto& n : names) out.push_back(ZooSpec::parse(n));
    return out;
}

std::vector<ZooChain> default_zoo() {
    std::vector<ZooChain> out;
    for (const auto& s : default_zoo_specs()) out.push_back(build_zoo_chain(s));
    return out;
}

std::vector<std::pair<std::string, std::string>> zoo_kinds() {
    return {{"flip", "flip"},
            {"cycle", "cycle(n), n >= 3"},
            {"hypercube", "hypercube(d)"},
            {"birth_death", "birth_death(w0,w1,...)"},
            {"ehrenfest", "ehrenfest(n)"},
            {"random_reversible", "random_reversible(n,seed)"},
            {"lazy_uniform", "lazy_uniform(n)"}};
}

}  // namespace mixhit
