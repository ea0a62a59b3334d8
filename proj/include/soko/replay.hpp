#pragma once

#include "soko/level.hpp"

#include <string>
#include <vector>

namespace soko {

// Step-wise LURD interpreter over the raw level grid, deliberately
// independent of the board move machinery so it can verify its output.

struct ReplayError : Error {
    ReplayError(int index_, const std::string& what) : Error(what), index(index_) {}
    int index;  // offending position in the LURD string
};

struct ReplayResult {
    std::vector<std::string> frames;  // XSB board after each step, initial first
    bool solved = false;              // final frame has every box on a target
};

ReplayResult replay_lurd(const Level& level, std::string_view lurd);

}  // namespace soko
