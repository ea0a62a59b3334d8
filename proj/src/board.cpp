#include "soko/board.hpp"

namespace soko {

State initial_state(const Level& level) { return State{level.start_boxes, level.start_player}; }

BitRows player_reachable(const Level& level, const State& state) {
    BitRows open = level.floor;
    open.and_not(state.boxes);
    return flood_from(open, state.player);
}

bool push_legal(const Level& level, const State& state, const BitRows& reach, Square box, Dir dir) {
    Square behind = step(box, opposite(dir));
    Square dest = step(box, dir);
    if (!level.in_bounds(behind) || !level.in_bounds(dest)) return false;
    if (!reach.test(behind)) return false;
    return level.floor.test(dest) && !state.boxes.test(dest);
}

bool pull_legal(const Level& level, const State& state, const BitRows& reach, Square box, Dir dir) {
    Square dest = step(box, dir);           // box moves here; player stands here
    Square retreat = step(dest, dir);       // player steps back here
    if (!level.in_bounds(dest) || !level.in_bounds(retreat)) return false;
    if (!reach.test(dest)) return false;
    return level.floor.test(retreat) && !state.boxes.test(retreat);
}

namespace {

template <class LegalFn>
std::vector<Move> enumerate_moves(const Level& level, const State& state, MoveKind kind,
                                  LegalFn&& legal) {
    BitRows reach = player_reachable(level, state);
    std::vector<Move> moves;
    state.boxes.for_each([&](Square box) {
        for (Dir d : kDirs)
            if (legal(level, state, reach, box, d)) moves.push_back(Move{kind, box, d});
    });
    return moves;
}

}  // namespace

std::vector<Move> legal_pushes(const Level& level, const State& state) {
    return enumerate_moves(level, state, MoveKind::Push, push_legal);
}

std::vector<Move> legal_pulls(const Level& level, const State& state) {
    return enumerate_moves(level, state, MoveKind::Pull, pull_legal);
}

State apply_push(const Level& level, const State& state, const Move& move) {
    BitRows reach = player_reachable(level, state);
    if (move.kind != MoveKind::Push || !state.boxes.test(move.box_from) ||
        !push_legal(level, state, reach, move.box_from, move.dir))
        throw Error("illegal push");
    State next = state;
    next.boxes.reset(move.box_from);
    next.boxes.set(step(move.box_from, move.dir));
    next.player = move.box_from;
    return next;
}

State apply_pull(const Level& level, const State& state, const Move& move) {
    BitRows reach = player_reachable(level, state);
    if (move.kind != MoveKind::Pull || !state.boxes.test(move.box_from) ||
        !pull_legal(level, state, reach, move.box_from, move.dir))
        throw Error("illegal pull");
    Square dest = step(move.box_from, move.dir);
    State next = state;
    next.boxes.reset(move.box_from);
    next.boxes.set(dest);
    next.player = step(dest, move.dir);
    return next;
}

Move mirror_pull(const Move& push) {
    return Move{MoveKind::Pull, step(push.box_from, push.dir), opposite(push.dir)};
}

BitRows goal_boxes(const Level& level) { return level.targets; }

bool is_forward_goal(const Level& level, const State& state) { return state.boxes == level.targets; }

bool is_backward_goal(const Level& level, const State& state) {
    return !state.boxes.intersects(level.targets);
}

BitRows dead_squares(const Level& level) {
    // Multi-source pull BFS over single-box positions: alive = can reach a
    // target by pushes. A push from p toward d needs floor at p+d and at p-d.
    BitRows alive = level.targets;
    std::vector<Square> queue = alive.to_squares();
    for (size_t i = 0; i < queue.size(); i++) {
        Square q = queue[i];
        for (Dir d : kDirs) {
            Square pred = step(q, opposite(d));
            Square behind = step(pred, opposite(d));
            if (!level.is_floor(pred) || !level.is_floor(behind)) continue;
            if (alive.test(pred)) continue;
            alive.set(pred);
            queue.push_back(pred);
        }
    }
    BitRows dead = level.floor;
    dead.and_not(alive);
    return dead;
}

StateKey state_key(const Level& level, const State& state) {
    BitRows reach = player_reachable(level, state);
    return StateKey{state.boxes, reach.first()};
}

}  // namespace soko
