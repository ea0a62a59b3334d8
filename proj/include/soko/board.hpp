#pragma once

#include "soko/level.hpp"

#include <vector>

namespace soko {

struct State {
    BitRows boxes;
    Square player = kNoSquare;

    bool operator==(const State&) const = default;
};

enum class MoveKind : uint8_t { Push, Pull };

// A macro move: the player repositions freely inside its region, then moves
// one box one square. box_from is the box square before the move.
struct Move {
    MoveKind kind = MoveKind::Push;
    Square box_from = kNoSquare;
    Dir dir = Dir::Up;

    bool valid() const { return box_from.valid(); }
    bool operator==(const Move&) const = default;
};

// Transposition identity: box set plus the canonical (lowest) square of the
// player's connected free region. Two states compare equal iff the box sets
// match and the players share a region.
struct StateKey {
    BitRows boxes;
    Square region = kNoSquare;

    bool operator==(const StateKey&) const = default;
    uint64_t hash() const { return boxes.hash() * 31 + uint64_t(region.key() + 1); }

    struct Hash {
        size_t operator()(const StateKey& k) const { return size_t(k.hash()); }
    };
};

State initial_state(const Level& level);

// Connected floor component containing the player, with boxes as obstacles.
BitRows player_reachable(const Level& level, const State& state);

// All legal moves in the fixed order: box square ascending, then U,D,L,R.
std::vector<Move> legal_pushes(const Level& level, const State& state);
std::vector<Move> legal_pulls(const Level& level, const State& state);

bool push_legal(const Level& level, const State& state, const BitRows& reach, Square box, Dir dir);
bool pull_legal(const Level& level, const State& state, const BitRows& reach, Square box, Dir dir);

State apply_push(const Level& level, const State& state, const Move& move);
State apply_pull(const Level& level, const State& state, const Move& move);

// The pull that undoes `push` when applied to the pushed state.
Move mirror_pull(const Move& push);

// Goal box configuration; the backward search chooses player placement.
BitRows goal_boxes(const Level& level);

bool is_forward_goal(const Level& level, const State& state);   // boxes == targets
bool is_backward_goal(const Level& level, const State& state);  // boxes ∩ targets == ∅

// Squares from which a box can never reach any target by pushes on the
// otherwise empty board (complement of pull reachability from the targets).
BitRows dead_squares(const Level& level);

StateKey state_key(const Level& level, const State& state);

}  // namespace soko
