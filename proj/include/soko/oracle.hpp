#pragma once

#include "soko/board.hpp"

namespace soko {

// Exact breadth-first solver over push moves, the independent ground truth
// for the heuristic machinery. Intended for small levels only.

enum class OracleStatus { Solved, Unsolvable, CapExceeded };

struct OracleResult {
    OracleStatus status = OracleStatus::Unsolvable;
    int pushes = -1;  // minimum pushes when Solved
    int states_seen = 0;
};

OracleResult optimal_push_count(const Level& level, int state_cap = 1000000);

struct EnumerationResult {
    bool complete = false;  // false when the cap was hit
    std::vector<StateKey> keys;
};

// All push-reachable states from the initial configuration, deduplicated.
EnumerationResult enumerate_states(const Level& level, int state_cap = 1000000);

}  // namespace soko
