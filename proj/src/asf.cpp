#include "mixhit/asf.hpp"

namespace mixhit {

std::size_t draw_lazy_clock(std::size_t k, RandomStream& rng) {
    std::size_t sum = 0;
    std::size_t count = 0;
    while (true) {
        sum += rng.geometric_half();
        if (sum > k) return count;
        ++count;
    }
}

GibbsIndexDraw gibbs_index_process(std::size_t d, std::size_t k, RandomStream& rng) {
    if (d == 0) throw InvalidArgument("gibbs_index_process: d must be positive");
    GibbsIndexDraw draw;
    draw.T = draw_lazy_clock(k, rng);
    draw.indices.resize(draw.T + 1);
    std::vector<bool> seen(d, false);
    std::size_t distinct = 0;
    for (auto& i : draw.indices) {
        i = rng.uniform_index(d);
        if (!seen[i]) {
            seen[i] = true;
            ++distinct;
        }
    }
    draw.covered = distinct == d;
    return draw;
}

std::vector<std::size_t> reversal(const std::vector<std::size_t>& J, std::size_t m) {
    if (J.size() < m + 1) throw InvalidArgument("reversal: sequence shorter than m + 1");
    return std::vector<std::size_t>(J.rend() - static_cast<std::ptrdiff_t>(m + 1), J.rend());
}

}  // namespace mixhit
