#pragma once

#include "soko/bitrows.hpp"
#include "soko/square.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace soko {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// Immutable board geometry. After parsing, every square outside the
// wall-enclosed player-reachable interior is a wall, so floor is exactly
// the complement of walls and the grid border is all wall.
struct Level {
    int width = 0;
    int height = 0;
    BitRows walls;
    BitRows floor;
    BitRows targets;
    BitRows start_boxes;
    Square start_player = kNoSquare;
    std::string name;

    int box_count = 0;
    int floor_count = 0;

    bool in_bounds(Square s) const {
        return s.x >= 0 && s.x < width && s.y >= 0 && s.y < height;
    }
    bool is_floor(Square s) const { return in_bounds(s) && floor.test(s); }
};

// XSB symbols: '#' wall, '@' player, '$' box, '.' target, '*' box on target,
// '+' player on target, ' ' floor.
Level parse_xsb(std::string_view text);

// Blank lines separate levels; ';' lines are comments naming the level that
// follows. Parse failures report the 1-based level index.
std::vector<Level> parse_collection(std::string_view text);

std::string serialize_xsb(const Level& level);

Level load_level_file(const std::string& path);
std::vector<Level> load_collection_file(const std::string& path);

}  // namespace soko
