#pragma once

#include <cstdint>
#include <vector>

namespace soko {

// xoshiro256** seeded via splitmix64. Self-contained so that seeded runs
// reproduce bit-for-bit across standard library versions; run reports record
// the seed.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) {
        uint64_t x = seed;
        for (auto& word : s_) {
            x += 0x9e3779b97f4a7c15ull;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            word = z ^ (z >> 31);
        }
    }

    uint64_t next() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, bound), bound > 0. Lemire's rejection method.
    uint64_t below(uint64_t bound) {
        unsigned __int128 m = (unsigned __int128)next() * bound;
        uint64_t lo = uint64_t(m);
        if (lo < bound) {
            uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = (unsigned __int128)next() * bound;
                lo = uint64_t(m);
            }
        }
        return uint64_t(m >> 64);
    }

    // Uniform in [0, 1).
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; i--) {
            size_t j = size_t(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derives an independent stream, e.g. one per benchmark level.
    static uint64_t mix(uint64_t seed, uint64_t salt) {
        uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace soko
