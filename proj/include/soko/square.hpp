#pragma once

#include <compare>
#include <cstdint>

namespace soko {

// Board coordinate. Grid width is capped at 64 columns so that one bitboard
// row fits a single 64-bit word; key() orders squares row-major (y, then x).
struct Square {
    int8_t x = -1;
    int8_t y = -1;

    constexpr Square() = default;
    constexpr Square(int x_, int y_) : x(int8_t(x_)), y(int8_t(y_)) {}

    constexpr bool valid() const { return x >= 0; }
    constexpr int key() const { return (int(y) << 6) | int(x); }

    friend constexpr bool operator==(Square a, Square b) { return a.x == b.x && a.y == b.y; }
    friend constexpr auto operator<=>(Square a, Square b) { return a.key() <=> b.key(); }
};

inline constexpr Square kNoSquare{};

enum class Dir : uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

// Fixed enumeration order used everywhere moves are generated.
inline constexpr Dir kDirs[4] = {Dir::Up, Dir::Down, Dir::Left, Dir::Right};

constexpr int dx(Dir d) {
    switch (d) {
        case Dir::Left: return -1;
        case Dir::Right: return 1;
        default: return 0;
    }
}

constexpr int dy(Dir d) {
    switch (d) {
        case Dir::Up: return -1;
        case Dir::Down: return 1;
        default: return 0;
    }
}

constexpr Dir opposite(Dir d) {
    switch (d) {
        case Dir::Up: return Dir::Down;
        case Dir::Down: return Dir::Up;
        case Dir::Left: return Dir::Right;
        default: return Dir::Left;
    }
}

constexpr Square step(Square s, Dir d) { return Square(s.x + dx(d), s.y + dy(d)); }

constexpr char push_letter(Dir d) {
    switch (d) {
        case Dir::Up: return 'U';
        case Dir::Down: return 'D';
        case Dir::Left: return 'L';
        default: return 'R';
    }
}

constexpr char walk_letter(Dir d) {
    switch (d) {
        case Dir::Up: return 'u';
        case Dir::Down: return 'd';
        case Dir::Left: return 'l';
        default: return 'r';
    }
}

}  // namespace soko
