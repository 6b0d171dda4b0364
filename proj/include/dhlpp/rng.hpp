#pragma once

#include <array>
#include <cstdint>
#include <cstring>

namespace dhlpp {

// splitmix64 step. Used to whiten seed material for substream derivation.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ generator. One instance per Monte Carlo sample; cheap to
// construct, so samples are reproducible independently of thread layout.
class Rng {
public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed) { seed_from(seed); }

    uint64_t next() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    uint64_t operator()() { return next(); }
    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~0ULL; }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double q) { return uniform() < q; }

    // Uniform integer in [0, n) by rejection-free scaling (n << 2^64, bias
    // negligible for n below 2^32; used only for picking test indices).
    uint64_t below(uint64_t n) { return next() % n; }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    void seed_from(uint64_t seed) {
        uint64_t s = seed;
        for (auto& w : s_) w = splitmix64(s);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x1ULL;
    }

    std::array<uint64_t, 4> s_{};
};

// FNV-1a over a short label; gives each experiment/purpose its own stream tag.
inline uint64_t stream_tag(const char* name) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (const char* c = name; *c; ++c) {
        h ^= uint64_t(uint8_t(*c));
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Counter-based substream: sample `index` of stream `tag` under `seed` is a
// fixed function of the triple, independent of execution order.
inline Rng substream(uint64_t seed, uint64_t tag, uint64_t index) {
    uint64_t s = seed;
    uint64_t a = splitmix64(s) ^ tag;
    uint64_t b = splitmix64(a) ^ (index * 0x9E3779B97F4A7C15ULL + 1);
    uint64_t mixed = splitmix64(b);
    return Rng(mixed);
}

}  // namespace dhlpp
