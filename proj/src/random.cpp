#include "mixhit/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "mixhit/errors.hpp"

namespace mixhit {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53U;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57U;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9U;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85U;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

void RandomStream::refill() {
    const std::array<std::uint32_t, 4> counter{
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
    buffer_ = philox4x32_10(counter, key);
    ++block_;
    used_ = 0;
}

std::uint64_t RandomStream::next_u64() {
    if (used_ > 2) refill();
    const std::uint64_t lo = buffer_[static_cast<std::size_t>(used_)];
    const std::uint64_t hi = buffer_[static_cast<std::size_t>(used_ + 1)];
    used_ += 2;
    return (hi << 32) | lo;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open() {
    for (;;) {
        const double u = uniform();
        if (u > 0.0) return u;
    }
}

std::size_t RandomStream::uniform_index(std::size_t n) {
    if (n == 0) throw InvalidArgument("uniform_index: n must be positive");
    const std::uint64_t bound = n;
    // Lemire's nearly divisionless method.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::size_t>(m >> 64);
}

double RandomStream::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_normal_ = true;
    return radius * std::cos(angle);
}

std::uint32_t RandomStream::geometric_half() {
    // Number of fair coin flips up to and including the first head.
    std::uint32_t flips = 0;
    for (;;) {
        const std::uint64_t bits = next_u64();
        if (bits != 0) return flips + static_cast<std::uint32_t>(std::countr_zero(bits)) + 1;
        flips += 64;
    }
}

RandomStream RandomStream::substream(std::uint64_t child) const {
    return RandomStream(seed_, mix64(stream_id_ ^ mix64(child + 0x632BE59BD9B4E019ULL)));
}

void TimeChangeStream::extend_to_count(std::size_t i) {
    while (zetas_.size() < i) {
        const auto z = rng_.geometric_half();
        zetas_.push_back(z);
        partial_sums_.push_back((partial_sums_.empty() ? 0 : partial_sums_.back()) + z);
    }
}

void TimeChangeStream::extend_to_sum(std::size_t t) {
    while (partial_sums_.empty() || partial_sums_.back() <= t) extend_to_count(zetas_.size() + 1);
}

std::uint32_t TimeChangeStream::zeta(std::size_t i) {
    if (i == 0) throw InvalidArgument("TimeChangeStream::zeta: indices start at 1");
    extend_to_count(i);
    return zetas_[i - 1];
}

std::size_t TimeChangeStream::clock(std::size_t t) {
    extend_to_sum(t);
    // Number of partial sums that are <= t.
    return static_cast<std::size_t>(std::upper_bound(partial_sums_.begin(), partial_sums_.end(), t) -
                                    partial_sums_.begin());
}

std::size_t TimeChangeStream::entrance(std::size_t i) {
    if (i == 0) return 0;
    extend_to_count(i);
    return partial_sums_[i - 1];
}

}  // namespace mixhit
