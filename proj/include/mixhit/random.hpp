#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace mixhit {

// Philox4x32-10 block function (Salmon et al., Random123). 128-bit counter,
// 64-bit key; a bijection on counters for each key.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Splittable counter-based stream keyed by (seed, stream id). The seed is the
// Philox key; the stream id fills the upper 64 counter bits and the block index
// the lower 64, so distinct stream ids under one seed never share a block.
// Satisfies UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64();
    // [0, 1) with 53 random bits.
    double uniform();
    // (0, 1)
    double uniform_open();
    // Uniform on {0, ..., n - 1}, unbiased.
    std::size_t uniform_index(std::size_t n);
    bool bernoulli(double p) { return uniform() < p; }
    double normal();
    // P(j) = 2^-j for j = 1, 2, ...
    std::uint32_t geometric_half();

    // Independent child stream; the child id is hashed with this stream's id.
    RandomStream substream(std::uint64_t child) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

// SplitMix64 finalizer, used to derive stream ids.
std::uint64_t mix64(std::uint64_t x);

// The geometric laziness clock: i.i.d. zeta_i >= 1 with P(zeta = j) = 2^-j and
// L(t) = max{i : zeta_1 + ... + zeta_i <= t}. Zetas are drawn on demand.
class TimeChangeStream {
public:
    explicit TimeChangeStream(RandomStream rng) : rng_(rng) {}

    // zeta_i for i >= 1.
    std::uint32_t zeta(std::size_t i);
    // L(t); L(0) = 0 and L(t) <= t.
    std::size_t clock(std::size_t t);
    // min{s : L(s) = i} = zeta_1 + ... + zeta_i.
    std::size_t entrance(std::size_t i);

private:
    void extend_to_sum(std::size_t t);
    void extend_to_count(std::size_t i);

    RandomStream rng_;
    std::vector<std::uint32_t> zetas_;
    std::vector<std::size_t> partial_sums_;  // partial_sums_[i] = zeta_1 + ... + zeta_i
};

}  // namespace mixhit
