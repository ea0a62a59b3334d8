#pragma once

#include "soko/level.hpp"
#include "soko/rng.hpp"

#include <optional>

namespace soko {

// Random level construction by reverse walk: boxes start on the targets and
// are pulled away, so the reversed pull sequence is a push solution and every
// generated level is solvable by construction. Used by the test suites and
// the corpus tool; the solver itself never generates levels.

struct GenOptions {
    int interior_w = 6;
    int interior_h = 6;
    int boxes = 2;
    int pulls = 12;                  // backward walk length
    double extra_wall_density = 0.15;
    bool goal_chamber = false;       // targets clustered in a walled room with one door
    int max_overlap = 0;             // boxes still on targets allowed in the start state
};

struct Generated {
    Level level;
    int construction_pushes = 0;  // length of the by-construction solution
};

// nullopt when the sampled geometry was rejected; callers retry with the
// same rng for a fresh sample.
std::optional<Generated> generate_level(const GenOptions& opt, Rng& rng);

// Retries generate_level until it succeeds.
Generated generate_level_retry(const GenOptions& opt, Rng& rng, int max_attempts = 200);

}  // namespace soko
