#include "soko/levelgen.hpp"

#include "soko/board.hpp"

namespace soko {
namespace {

struct Cell {
    bool wall = false;
};

}  // namespace

std::optional<Generated> generate_level(const GenOptions& opt, Rng& rng) {
    const int w = opt.interior_w + 2;
    const int h = opt.interior_h + 2;
    if (w > 64 || opt.interior_w < 3 || opt.interior_h < 3 || opt.boxes < 1) return std::nullopt;

    BitRows floor(h);
    for (int y = 1; y <= opt.interior_h; y++)
        for (int x = 1; x <= opt.interior_w; x++)
            if (rng.next_double() >= opt.extra_wall_density) floor.set({x, y});

    // Optional goal chamber: a walled room with a single door.
    int cx0 = 0, cy0 = 0, cw = 0, ch = 0;
    if (opt.goal_chamber) {
        cw = 2 + int(rng.below(2));
        ch = 2 + int(rng.below(2));
        while (cw * ch < opt.boxes + 1) {
            if (cw <= ch && cw < opt.interior_w - 3) cw++;
            else ch++;
        }
        if (cw + 2 > opt.interior_w || ch + 2 > opt.interior_h) return std::nullopt;
        cx0 = 1 + int(rng.below(uint64_t(opt.interior_w - cw - 1)));
        cy0 = 1 + int(rng.below(uint64_t(opt.interior_h - ch - 1)));
        // Clear the room, wall the perimeter, open one door.
        for (int y = cy0 - 1; y <= cy0 + ch; y++)
            for (int x = cx0 - 1; x <= cx0 + cw; x++) {
                bool border = y == cy0 - 1 || y == cy0 + ch || x == cx0 - 1 || x == cx0 + cw;
                Square s(x, y);
                if (border)
                    floor.reset(s);
                else
                    floor.set(s);
            }
        std::vector<Square> door_candidates;
        for (int x = cx0; x < cx0 + cw; x++) {
            if (cy0 - 1 > 1) door_candidates.push_back({x, cy0 - 1});
            if (cy0 + ch < h - 2) door_candidates.push_back({x, cy0 + ch});
        }
        for (int y = cy0; y < cy0 + ch; y++) {
            if (cx0 - 1 > 1) door_candidates.push_back({cx0 - 1, y});
            if (cx0 + cw < w - 2) door_candidates.push_back({cx0 + cw, y});
        }
        if (door_candidates.empty()) return std::nullopt;
        floor.set(door_candidates[size_t(rng.below(door_candidates.size()))]);
    }

    // Keep the largest connected floor component.
    BitRows remaining = floor, best_comp(h);
    while (true) {
        Square seed = remaining.first();
        if (!seed.valid()) break;
        BitRows comp = flood_from(remaining, seed);
        if (comp.count() > best_comp.count()) best_comp = comp;
        remaining.and_not(comp);
    }
    floor = best_comp;
    if (floor.count() < opt.boxes * 3 + 2) return std::nullopt;
    if (opt.goal_chamber) {
        // The chamber must have survived as part of the main component.
        for (int y = cy0; y < cy0 + ch; y++)
            for (int x = cx0; x < cx0 + cw; x++)
                if (!floor.test({x, y})) return std::nullopt;
    }

    // Targets.
    std::vector<Square> pool;
    if (opt.goal_chamber) {
        for (int y = cy0; y < cy0 + ch; y++)
            for (int x = cx0; x < cx0 + cw; x++) pool.push_back({x, y});
    } else {
        pool = floor.to_squares();
    }
    if (int(pool.size()) < opt.boxes + (opt.goal_chamber ? 1 : 2)) return std::nullopt;
    rng.shuffle(pool);
    BitRows targets(h);
    for (int i = 0; i < opt.boxes; i++) targets.set(pool[size_t(i)]);

    // Reverse walk: pull boxes away from the goal configuration.
    Level scaffold;
    scaffold.width = w;
    scaffold.height = h;
    scaffold.floor = floor;
    scaffold.walls = BitRows(h);
    for (int y = 0; y < h; y++)
        for (int x = 0; x < w; x++)
            if (!floor.test({x, y})) scaffold.walls.set({x, y});
    scaffold.targets = targets;
    scaffold.box_count = opt.boxes;
    scaffold.floor_count = floor.count();

    BitRows open = floor;
    open.and_not(targets);
    std::vector<Square> stands = open.to_squares();
    if (stands.empty()) return std::nullopt;
    State state{targets, stands[size_t(rng.below(stands.size()))]};

    int pulls_done = 0;
    for (int i = 0; i < opt.pulls; i++) {
        std::vector<Move> pulls = legal_pulls(scaffold, state);
        if (pulls.empty()) break;
        state = apply_pull(scaffold, state, pulls[size_t(rng.below(pulls.size()))]);
        pulls_done++;
    }
    if (pulls_done < std::max(1, opt.pulls / 3)) return std::nullopt;
    if ((state.boxes & targets).count() > opt.max_overlap) return std::nullopt;
    if (state.boxes == targets) return std::nullopt;

    scaffold.start_boxes = state.boxes;
    scaffold.start_player = state.player;

    // Normalize and validate through the parser.
    try {
        Generated out{parse_xsb(serialize_xsb(scaffold)), pulls_done};
        return out;
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

Generated generate_level_retry(const GenOptions& opt, Rng& rng, int max_attempts) {
    for (int i = 0; i < max_attempts; i++) {
        auto g = generate_level(opt, rng);
        if (g) return *g;
    }
    throw Error("level generation failed after retries");
}

}  // namespace soko
