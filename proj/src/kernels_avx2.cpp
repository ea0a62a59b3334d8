// AVX2 variants of the bit-grid kernels. This translation unit is compiled
// with -mavx2; callers must check avx2_supported() before selecting it.

#include "soko/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <bit>
#include <cstddef>

namespace soko::kern {
namespace {

#define SOKO_SMEAR_STEP(g, p, s, shift)      \
    g = _mm256_or_si256(g, _mm256_and_si256(p, shift(g, s))); \
    p = _mm256_and_si256(p, shift(p, s))

// Four rows at a time, same carry-lookahead run fill as the scalar kernel.
inline __m256i smear4(__m256i seed, __m256i open) {
    __m256i g = _mm256_and_si256(seed, open);
    __m256i gl = g, gr = g, p;
    p = open;
    SOKO_SMEAR_STEP(gl, p, 1, _mm256_slli_epi64);
    SOKO_SMEAR_STEP(gl, p, 2, _mm256_slli_epi64);
    SOKO_SMEAR_STEP(gl, p, 4, _mm256_slli_epi64);
    SOKO_SMEAR_STEP(gl, p, 8, _mm256_slli_epi64);
    SOKO_SMEAR_STEP(gl, p, 16, _mm256_slli_epi64);
    SOKO_SMEAR_STEP(gl, p, 32, _mm256_slli_epi64);
    p = open;
    SOKO_SMEAR_STEP(gr, p, 1, _mm256_srli_epi64);
    SOKO_SMEAR_STEP(gr, p, 2, _mm256_srli_epi64);
    SOKO_SMEAR_STEP(gr, p, 4, _mm256_srli_epi64);
    SOKO_SMEAR_STEP(gr, p, 8, _mm256_srli_epi64);
    SOKO_SMEAR_STEP(gr, p, 16, _mm256_srli_epi64);
    SOKO_SMEAR_STEP(gr, p, 32, _mm256_srli_epi64);
    return _mm256_or_si256(gl, gr);
}

#undef SOKO_SMEAR_STEP

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

inline uint64_t sweep_row(uint64_t* reach, const uint64_t* open, int y, int h) {
    uint64_t seeds = reach[y];
    if (y > 0) seeds |= reach[y - 1];
    if (y + 1 < h) seeds |= reach[y + 1];
    if ((seeds & open[y]) == reach[y]) return 0;
    uint64_t r = smear_row(seeds, open[y]);
    uint64_t delta = r ^ reach[y];
    reach[y] = r;
    return delta;
}

// Rows [y, y+4) with both vertical neighbour loads in range: needs y >= 1
// and y + 4 <= h - 1.
inline __m256i sweep_block(uint64_t* reach, const uint64_t* open, int y) {
    __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(reach + y));
    __m256i up = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(reach + y - 1));
    __m256i dn = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(reach + y + 1));
    __m256i op = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(open + y));
    __m256i seeds = _mm256_or_si256(cur, _mm256_or_si256(up, dn));
    __m256i r = smear4(seeds, op);
    __m256i delta = _mm256_xor_si256(r, cur);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(reach + y), r);
    return delta;
}

void flood_avx2(uint64_t* reach, const uint64_t* open, int h) {
    if (h < 8) {
        scalar_ops().flood(reach, open, h);
        return;
    }
    for (int y = 0; y < h; y++) reach[y] = smear_row(reach[y], open[y]);
    const int last_block = h - 5;  // max y with y+4 <= h-1
    for (;;) {
        __m256i vdelta = _mm256_setzero_si256();
        uint64_t sdelta = 0;

        sdelta |= sweep_row(reach, open, 0, h);
        int y = 1;
        for (; y <= last_block; y += 4) vdelta = _mm256_or_si256(vdelta, sweep_block(reach, open, y));
        for (; y < h; y++) sdelta |= sweep_row(reach, open, y, h);

        sdelta |= sweep_row(reach, open, h - 1, h);
        y = h - 5;
        for (; y >= 1; y -= 4) vdelta = _mm256_or_si256(vdelta, sweep_block(reach, open, y));
        for (y += 3; y >= 0; y--) sdelta |= sweep_row(reach, open, y, h);

        if (sdelta == 0 && _mm256_testz_si256(vdelta, vdelta)) break;
    }
}

inline __m256i popcount_bytes(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
}

int max_and_count_avx2(const uint64_t* blocks, int nblocks, const uint64_t* query, int h) {
    const int hv = h & ~3;
    const __m256i zero = _mm256_setzero_si256();
    int best = 0;
    for (int b = 0; b < nblocks; b++) {
        const uint64_t* block = blocks + size_t(b) * h;
        __m256i acc = zero;
        for (int y = 0; y < hv; y += 4) {
            __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(block + y));
            __m256i q = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(query + y));
            __m256i c = popcount_bytes(_mm256_and_si256(a, q));
            acc = _mm256_add_epi64(acc, _mm256_sad_epu8(c, zero));
        }
        alignas(32) uint64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
        int n = int(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
        for (int y = hv; y < h; y++) n += std::popcount(block[y] & query[y]);
        if (n > best) best = n;
    }
    return best;
}

}  // namespace

const Ops& avx2_ops() {
    static constexpr Ops ops{"avx2", &flood_avx2, &max_and_count_avx2};
    return ops;
}

}  // namespace soko::kern

#endif  // __AVX2__
