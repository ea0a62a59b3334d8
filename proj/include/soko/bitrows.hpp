#pragma once

#include "soko/kernels.hpp"
#include "soko/square.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace soko {

// Bit grid over board squares, one 64-bit word per row (width <= 64).
class BitRows {
public:
    BitRows() = default;
    explicit BitRows(int height) : rows_(size_t(height), 0) {}

    int height() const { return int(rows_.size()); }

    bool test(Square s) const { return (rows_[size_t(s.y)] >> s.x) & 1; }
    void set(Square s) { rows_[size_t(s.y)] |= uint64_t(1) << s.x; }
    void reset(Square s) { rows_[size_t(s.y)] &= ~(uint64_t(1) << s.x); }

    uint64_t row(int y) const { return rows_[size_t(y)]; }
    uint64_t* words() { return rows_.data(); }
    const uint64_t* words() const { return rows_.data(); }

    bool any() const {
        for (uint64_t w : rows_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    int count() const {
        int n = 0;
        for (uint64_t w : rows_) n += std::popcount(w);
        return n;
    }

    // Lowest set square in row-major order, kNoSquare when empty.
    Square first() const {
        for (int y = 0; y < height(); y++)
            if (rows_[size_t(y)]) return Square(std::countr_zero(rows_[size_t(y)]), y);
        return kNoSquare;
    }

    // Visits set squares in row-major order.
    template <class F>
    void for_each(F&& f) const {
        for (int y = 0; y < height(); y++) {
            uint64_t w = rows_[size_t(y)];
            while (w) {
                int x = std::countr_zero(w);
                f(Square(x, y));
                w &= w - 1;
            }
        }
    }

    std::vector<Square> to_squares() const {
        std::vector<Square> out;
        out.reserve(size_t(count()));
        for_each([&](Square s) { out.push_back(s); });
        return out;
    }

    BitRows& operator&=(const BitRows& o) {
        for (size_t i = 0; i < rows_.size(); i++) rows_[i] &= o.rows_[i];
        return *this;
    }
    BitRows& operator|=(const BitRows& o) {
        for (size_t i = 0; i < rows_.size(); i++) rows_[i] |= o.rows_[i];
        return *this;
    }
    BitRows& and_not(const BitRows& o) {
        for (size_t i = 0; i < rows_.size(); i++) rows_[i] &= ~o.rows_[i];
        return *this;
    }

    friend BitRows operator&(BitRows a, const BitRows& b) { return a &= b; }
    friend BitRows operator|(BitRows a, const BitRows& b) { return a |= b; }

    bool intersects(const BitRows& o) const {
        for (size_t i = 0; i < rows_.size(); i++)
            if (rows_[i] & o.rows_[i]) return true;
        return false;
    }

    bool operator==(const BitRows&) const = default;

    uint64_t hash() const {
        uint64_t h = 0x9e3779b97f4a7c15ull ^ (uint64_t(rows_.size()) << 32);
        for (uint64_t w : rows_) {
            h ^= w;
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 33;
        }
        return h;
    }

private:
    std::vector<uint64_t> rows_;
};

// 4-neighbour connected closure of `seed` within `open` (kernel-backed).
inline BitRows flood_from(const BitRows& open, Square seed) {
    BitRows reach(open.height());
    if (seed.valid() && open.test(seed)) {
        reach.set(seed);
        kern::ops().flood(reach.words(), open.words(), open.height());
    }
    return reach;
}

// Number of 4-connected components of `open`. When `player` is valid and
// inside `open`, *player_region_first receives the canonical (lowest) square
// of the component containing it.
inline int count_regions(const BitRows& open, Square player = kNoSquare,
                         Square* player_region_first = nullptr) {
    BitRows remaining = open;
    int regions = 0;
    if (player_region_first) *player_region_first = kNoSquare;
    while (true) {
        Square seed = remaining.first();
        if (!seed.valid()) break;
        BitRows comp = flood_from(remaining, seed);
        regions++;
        if (player_region_first && player.valid() && comp.test(player)) *player_region_first = seed;
        remaining.and_not(comp);
    }
    return regions;
}

}  // namespace soko
