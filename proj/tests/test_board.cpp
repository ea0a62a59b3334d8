#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "soko/board.hpp"
#include "soko/levelgen.hpp"

#include <map>
#include <set>

using namespace soko;

namespace {

const char* kCorridor = "#####\n#@$.#\n#####";

// Definition-level legality predicates, written independently of the
// enumeration code they check.
bool push_legal_by_definition(const Level& lv, const State& s, Square box, Dir d) {
    if (!s.boxes.test(box)) return false;
    Square behind = step(box, opposite(d)), dest = step(box, d);
    if (!lv.is_floor(behind) || !lv.is_floor(dest)) return false;
    if (s.boxes.test(dest)) return false;
    return player_reachable(lv, s).test(behind);
}

bool pull_legal_by_definition(const Level& lv, const State& s, Square box, Dir d) {
    if (!s.boxes.test(box)) return false;
    Square dest = step(box, d), retreat = step(dest, d);
    if (!lv.is_floor(dest) || !lv.is_floor(retreat)) return false;
    if (s.boxes.test(dest) || s.boxes.test(retreat)) return false;
    return player_reachable(lv, s).test(dest);
}

}  // namespace

TEST_CASE("player reachability") {
    Level corridor = parse_xsb(kCorridor);
    BitRows reach = player_reachable(corridor, initial_state(corridor));
    CHECK(reach.count() == 1);
    CHECK(reach.test({1, 1}));

    Level room = parse_xsb("#####\n#  .#\n#@$ #\n#   #\n#####");
    State s = initial_state(room);
    s.boxes = BitRows(room.height);  // no boxes: every floor square reachable
    CHECK(player_reachable(room, s).count() == room.floor_count);

    // A wall of boxes splits the floor; flood fill by hand:
    // reach = {(3,1),(3,2),(3,3),(2,3),(1,3)}, (1,1) cut off.
    Level split = parse_xsb("#####\n#.$@#\n#$$.#\n#.  #\n#####");
    BitRows r = player_reachable(split, initial_state(split));
    CHECK(r.count() == 5);
    CHECK(r.test({3, 1}));
    CHECK(r.test({1, 3}));
    CHECK(!r.test({1, 1}));
}

TEST_CASE("legal_pushes on the corridor") {
    Level lv = parse_xsb(kCorridor);
    auto pushes = legal_pushes(lv, initial_state(lv));
    REQUIRE(pushes.size() == 1);
    CHECK(pushes[0].box_from == Square(2, 1));
    CHECK(pushes[0].dir == Dir::Right);
}

TEST_CASE("corner box has no up/left pushes") {
    Level lv = parse_xsb("#####\n#$  #\n# @.#\n#####");
    auto pushes = legal_pushes(lv, initial_state(lv));
    for (const Move& m : pushes) {
        CHECK(m.dir != Dir::Up);
        CHECK(m.dir != Dir::Left);
    }
}

TEST_CASE("move enumeration matches the definition on random two-box boards") {
    Rng rng(11);
    GenOptions opt;
    opt.interior_w = 5;
    opt.interior_h = 5;
    opt.boxes = 2;
    opt.pulls = 8;
    for (int iter = 0; iter < 40; iter++) {
        Level lv = generate_level_retry(opt, rng).level;
        State s = initial_state(lv);

        std::set<std::tuple<int, int, int>> enumerated, definition;
        for (const Move& m : legal_pushes(lv, s))
            enumerated.insert({m.box_from.x, m.box_from.y, int(m.dir)});
        s.boxes.for_each([&](Square box) {
            for (Dir d : kDirs)
                if (push_legal_by_definition(lv, s, box, d))
                    definition.insert({box.x, box.y, int(d)});
        });
        CHECK(enumerated == definition);

        enumerated.clear();
        definition.clear();
        for (const Move& m : legal_pulls(lv, s))
            enumerated.insert({m.box_from.x, m.box_from.y, int(m.dir)});
        s.boxes.for_each([&](Square box) {
            for (Dir d : kDirs)
                if (pull_legal_by_definition(lv, s, box, d))
                    definition.insert({box.x, box.y, int(d)});
        });
        CHECK(enumerated == definition);
    }
}

TEST_CASE("move lists are duplicate-free and ordered") {
    Rng rng(5);
    GenOptions opt;
    opt.interior_w = 6;
    opt.interior_h = 5;
    opt.boxes = 3;
    opt.pulls = 9;
    for (int iter = 0; iter < 20; iter++) {
        Level lv = generate_level_retry(opt, rng).level;
        auto moves = legal_pushes(lv, initial_state(lv));
        for (size_t i = 1; i < moves.size(); i++) {
            bool ordered = moves[i - 1].box_from < moves[i].box_from ||
                           (moves[i - 1].box_from == moves[i].box_from &&
                            int(moves[i - 1].dir) < int(moves[i].dir));
            CHECK(ordered);
        }
    }
}

TEST_CASE("apply_push reaches the corridor goal") {
    Level lv = parse_xsb(kCorridor);
    auto pushes = legal_pushes(lv, initial_state(lv));
    State next = apply_push(lv, initial_state(lv), pushes[0]);
    CHECK(next.boxes.test({3, 1}));
    CHECK(next.player == Square(2, 1));
    CHECK(is_forward_goal(lv, next));
    CHECK_THROWS_AS(apply_push(lv, next, pushes[0]), Error);
}

TEST_CASE("goal-state pulls mirror pushes") {
    Level lv = parse_xsb("#####\n#@ *#\n#####");  // corridor goal configuration
    State s = initial_state(lv);
    auto pulls = legal_pulls(lv, s);
    REQUIRE(pulls.size() == 1);
    CHECK(pulls[0].box_from == Square(3, 1));
    CHECK(pulls[0].dir == Dir::Left);
}

TEST_CASE("pull requires a retreat square") {
    // Player adjacent to the box but backed against a wall: no pull that way.
    Level lv = parse_xsb("#####\n#$@.#\n#####");
    State s = initial_state(lv);
    auto pulls = legal_pulls(lv, s);
    REQUIRE(pulls.size() == 1);  // only pulling right, retreating onto the target
    CHECK(pulls[0].dir == Dir::Right);
}

TEST_CASE("push/pull inversion restores the box set") {
    Rng rng(17);
    GenOptions opt;
    opt.interior_w = 6;
    opt.interior_h = 6;
    opt.boxes = 3;
    opt.pulls = 10;
    for (int iter = 0; iter < 25; iter++) {
        Level lv = generate_level_retry(opt, rng).level;
        State s = initial_state(lv);
        for (int step_i = 0; step_i < 20; step_i++) {
            auto pushes = legal_pushes(lv, s);
            if (pushes.empty()) break;
            const Move& m = pushes[size_t(rng.below(pushes.size()))];
            State pushed = apply_push(lv, s, m);
            State back = apply_pull(lv, pushed, mirror_pull(m));
            CHECK(back.boxes == s.boxes);

            // State invariants hold along the walk.
            CHECK(!pushed.boxes.intersects(lv.walls));
            CHECK(pushed.boxes.count() == lv.box_count);
            CHECK(lv.is_floor(pushed.player));
            CHECK(!pushed.boxes.test(pushed.player));
            s = pushed;
        }
    }
}

TEST_CASE("goal predicates") {
    Level lv = parse_xsb(kCorridor);
    State s = initial_state(lv);
    CHECK(!is_forward_goal(lv, s));
    CHECK(is_backward_goal(lv, s));  // single box, off target

    CHECK(goal_boxes(lv) == lv.targets);

    Level three = parse_xsb("########\n#@$$$  #\n# ...  #\n########");
    State t = initial_state(three);
    CHECK(!is_forward_goal(three, t));
    CHECK(is_backward_goal(three, t));
    t.boxes = BitRows(three.height);
    t.boxes.set({2, 2});  // one box on a target, two elsewhere
    t.boxes.set({5, 1});
    t.boxes.set({6, 1});
    CHECK(!is_forward_goal(three, t));
    CHECK(!is_backward_goal(three, t));
    t.boxes = three.targets;
    t.player = Square(1, 1);
    CHECK(is_forward_goal(three, t));
    CHECK(!is_backward_goal(three, t));
}

TEST_CASE("dead squares") {
    Level lv = parse_xsb("#####\n#@  #\n# $.#\n#   #\n#####");
    BitRows dead = dead_squares(lv);
    // Non-target corners are dead, the target is not.
    CHECK(dead.test({1, 1}));
    CHECK(dead.test({1, 3}));
    CHECK(dead.test({3, 3}));
    CHECK(!dead.test({3, 2}));
    CHECK(!dead.intersects(lv.targets));

    // Walls next to non-target edges make the whole edge dead.
    CHECK(dead.test({2, 1}));
    CHECK(dead.test({3, 1}));
}

TEST_CASE("dead squares match a single-box oracle") {
    // Push BFS per start square over an otherwise empty board, with the
    // player treated as free to stand anywhere the push needs.
    auto oracle_dead = [](const Level& lv) {
        BitRows dead(lv.height);
        lv.floor.for_each([&](Square start) {
            std::set<int> seen{start.key()};
            std::vector<Square> queue{start};
            bool alive = lv.targets.test(start);
            for (size_t i = 0; i < queue.size() && !alive; i++) {
                for (Dir d : kDirs) {
                    Square behind = step(queue[i], opposite(d)), dest = step(queue[i], d);
                    if (!lv.is_floor(behind) || !lv.is_floor(dest)) continue;
                    if (!seen.insert(dest.key()).second) continue;
                    if (lv.targets.test(dest)) {
                        alive = true;
                        break;
                    }
                    queue.push_back(dest);
                }
            }
            if (!alive) dead.set(start);
        });
        return dead;
    };

    Level fourbyfour = parse_xsb("######\n#@   #\n# .$ #\n#    #\n######");
    CHECK(dead_squares(fourbyfour) == oracle_dead(fourbyfour));

    Rng rng(23);
    GenOptions opt;
    opt.interior_w = 6;
    opt.interior_h = 5;
    opt.boxes = 2;
    opt.pulls = 8;
    opt.extra_wall_density = 0.25;
    for (int iter = 0; iter < 25; iter++) {
        Level lv = generate_level_retry(opt, rng).level;
        CHECK(dead_squares(lv) == oracle_dead(lv));
    }
}

TEST_CASE("state keys identify player regions") {
    Level lv = parse_xsb("#######\n#  $  #\n#@ $ .#\n#  $ .#\n#    .#\n#######");
    State a = initial_state(lv);
    State b = a;
    b.player = Square(1, 3);  // same region
    CHECK(state_key(lv, a) == state_key(lv, b));

    State c = a;
    c.player = Square(5, 1);  // other side of the box wall... still connected below
    BitRows reach = player_reachable(lv, a);
    if (reach.test(c.player)) {
        CHECK(state_key(lv, a) == state_key(lv, c));
    } else {
        CHECK(!(state_key(lv, a) == state_key(lv, c)));
    }

    // Different box sets always differ.
    State d = a;
    d.boxes.reset({3, 1});
    d.boxes.set({4, 1});
    CHECK(!(state_key(lv, a) == state_key(lv, d)));
}

TEST_CASE("state key equivalence classes match brute force on a tiny level") {
    Level lv = parse_xsb("#####\n#@$ #\n# . #\n#####");
    // Enumerate every (box square, player square) configuration and group by
    // key; each group must be exactly {same boxes} x {one flood region}.
    std::map<std::pair<int, int>, std::vector<StateKey>> groups;
    lv.floor.for_each([&](Square box) {
        lv.floor.for_each([&](Square player) {
            if (player == box) return;
            State s;
            s.boxes = BitRows(lv.height);
            s.boxes.set(box);
            s.player = player;
            BitRows reach = player_reachable(lv, s);
            groups[{box.key(), reach.first().key()}].push_back(state_key(lv, s));
        });
    });
    for (auto& [sig, keys] : groups) {
        for (const StateKey& k : keys) CHECK(k == keys.front());
    }
    // Keys across different groups differ.
    std::vector<StateKey> reps;
    for (auto& [sig, keys] : groups) reps.push_back(keys.front());
    for (size_t i = 0; i < reps.size(); i++)
        for (size_t j = i + 1; j < reps.size(); j++) CHECK(!(reps[i] == reps[j]));
}
