#pragma once

#include <cstdint>

// Bit-grid inner loops of the search core, with a scalar reference
// implementation and an AVX2 variant selected at runtime. Grids are stored
// one row per uint64_t word: rows[y] bit x is square (x, y). Horizontal
// neighbours are bit shifts inside a word, vertical neighbours are the
// adjacent words. Bits shifted past either end of a word fall off (no wrap
// into the next row) and rows outside [0, h) read as zero.

namespace soko::kern {

struct Ops {
    const char* name;

    // Expands `reach` in place to the 4-neighbour connected closure of its
    // seed bits inside `open`. Seed bits outside `open` are dropped.
    void (*flood)(uint64_t* reach, const uint64_t* open, int h);

    // `blocks` holds nblocks consecutive h-word grids. Returns the maximum
    // over the blocks of popcount(block & query), 0 when nblocks == 0.
    int (*max_and_count)(const uint64_t* blocks, int nblocks, const uint64_t* query, int h);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // falls back to scalar_ops() when unsupported
bool avx2_supported();

// The active implementation: AVX2 when the CPU has it, else scalar.
// SOKO_KERNEL=scalar|avx2 in the environment forces a choice, as does
// force(); force(nullptr) restores automatic selection.
const Ops& ops();
void force(const char* name);

}  // namespace soko::kern
