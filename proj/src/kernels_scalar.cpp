#include "soko/kernels.hpp"

#include <bit>
#include <cstddef>

namespace soko::kern {
namespace {

// Fills every open bit reachable from a seed bit by moving left/right inside
// one row word, carry-lookahead style: after step s, runs of length < 2*s
// are fully propagated.
inline uint64_t smear_row(uint64_t seed, uint64_t open) {
    uint64_t g = seed & open;
    if (g == 0 || g == open) return g;
    uint64_t gl = g, gr = g, p;
    p = open;
    for (int s = 1; s < 64; s <<= 1) {
        gl |= p & (gl << s);
        p &= p << s;
    }
    p = open;
    for (int s = 1; s < 64; s <<= 1) {
        gr |= p & (gr >> s);
        p &= p >> s;
    }
    return gl | gr;
}

void flood_scalar(uint64_t* reach, const uint64_t* open, int h) {
    for (int y = 0; y < h; y++) reach[y] = smear_row(reach[y], open[y]);
    for (;;) {
        uint64_t delta = 0;
        for (int y = 0; y < h; y++) {
            uint64_t seeds = reach[y];
            if (y > 0) seeds |= reach[y - 1];
            if (y + 1 < h) seeds |= reach[y + 1];
            if ((seeds & open[y]) == reach[y]) continue;
            uint64_t r = smear_row(seeds, open[y]);
            delta |= r ^ reach[y];
            reach[y] = r;
        }
        for (int y = h - 1; y >= 0; y--) {
            uint64_t seeds = reach[y];
            if (y > 0) seeds |= reach[y - 1];
            if (y + 1 < h) seeds |= reach[y + 1];
            if ((seeds & open[y]) == reach[y]) continue;
            uint64_t r = smear_row(seeds, open[y]);
            delta |= r ^ reach[y];
            reach[y] = r;
        }
        if (delta == 0) break;
    }
}

int max_and_count_scalar(const uint64_t* blocks, int nblocks, const uint64_t* query, int h) {
    int best = 0;
    for (int b = 0; b < nblocks; b++) {
        const uint64_t* block = blocks + size_t(b) * h;
        int n = 0;
        for (int y = 0; y < h; y++) n += std::popcount(block[y] & query[y]);
        if (n > best) best = n;
    }
    return best;
}

}  // namespace

const Ops& scalar_ops() {
    static constexpr Ops ops{"scalar", &flood_scalar, &max_and_count_scalar};
    return ops;
}

}  // namespace soko::kern
