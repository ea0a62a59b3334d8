#include "soko/oracle.hpp"

#include <unordered_set>

namespace soko {
namespace {

struct Frontier {
    State state;
    int depth;
};

}  // namespace

OracleResult optimal_push_count(const Level& level, int state_cap) {
    OracleResult out;
    State start = initial_state(level);
    if (is_forward_goal(level, start)) {
        out.status = OracleStatus::Solved;
        out.pushes = 0;
        out.states_seen = 1;
        return out;
    }

    std::unordered_set<StateKey, StateKey::Hash> seen;
    std::vector<Frontier> queue;
    seen.insert(state_key(level, start));
    queue.push_back({start, 0});

    for (size_t i = 0; i < queue.size(); i++) {
        State state = queue[i].state;
        int depth = queue[i].depth;
        for (const Move& m : legal_pushes(level, state)) {
            State child = apply_push(level, state, m);
            if (is_forward_goal(level, child)) {
                out.status = OracleStatus::Solved;
                out.pushes = depth + 1;
                out.states_seen = int(seen.size()) + 1;
                return out;
            }
            StateKey key = state_key(level, child);
            if (!seen.insert(std::move(key)).second) continue;
            if (int(seen.size()) > state_cap) {
                out.status = OracleStatus::CapExceeded;
                out.states_seen = int(seen.size());
                return out;
            }
            queue.push_back({std::move(child), depth + 1});
        }
    }
    out.status = OracleStatus::Unsolvable;
    out.states_seen = int(seen.size());
    return out;
}

EnumerationResult enumerate_states(const Level& level, int state_cap) {
    EnumerationResult out;
    State start = initial_state(level);
    std::unordered_set<StateKey, StateKey::Hash> seen;
    std::vector<State> queue{start};
    seen.insert(state_key(level, start));

    for (size_t i = 0; i < queue.size(); i++) {
        State state = queue[i];
        for (const Move& m : legal_pushes(level, state)) {
            State child = apply_push(level, state, m);
            StateKey key = state_key(level, child);
            if (!seen.insert(key).second) continue;
            if (int(seen.size()) > state_cap) {
                out.complete = false;
                out.keys.assign(seen.begin(), seen.end());
                return out;
            }
            queue.push_back(std::move(child));
        }
    }
    out.complete = true;
    out.keys.assign(seen.begin(), seen.end());
    return out;
}

}  // namespace soko
