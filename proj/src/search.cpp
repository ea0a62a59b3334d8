#include "soko/search.hpp"

#include <algorithm>
#include <unordered_set>

namespace soko {

int SearchTree::add_node(int parent, const Move& move, const BitRows& boxes, Square player,
                         Square region, uint64_t key_hash, uint8_t flags) {
    int id = int(nodes_.size());
    Node n;
    n.parent = parent;
    n.move = move;
    n.player = player;
    n.region = region;
    n.key_hash = key_hash;
    n.flags = flags;
    n.depth = parent < 0 ? 0 : nodes_[size_t(parent)].depth + 1;
    nodes_.push_back(n);
    for (int y = 0; y < h_; y++) arena_.push_back(boxes.row(y));
    return id;
}

void SearchTree::pop_node() {
    nodes_.pop_back();
    arena_.resize(arena_.size() - size_t(h_));
}

void SearchTree::link_child(int parent, int child, int& last_child) {
    if (last_child < 0)
        nodes_[size_t(parent)].first_child = child;
    else
        nodes_[size_t(last_child)].next_sibling = child;
    last_child = child;
}

std::vector<Move> SearchTree::path_moves(int node_id) const {
    std::vector<Move> moves;
    for (int i = node_id; i >= 0; i = nodes_[size_t(i)].parent)
        if (nodes_[size_t(i)].move.valid()) moves.push_back(nodes_[size_t(i)].move);
    std::reverse(moves.begin(), moves.end());
    return moves;
}

std::vector<BitRows> SearchTree::path_boxes(int node_id) const {
    std::vector<int> chain;
    for (int i = node_id; i >= 0; i = nodes_[size_t(i)].parent)
        if (!nodes_[size_t(i)].is(kVirtual)) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    std::vector<BitRows> out;
    out.reserve(chain.size());
    for (int i : chain) out.push_back(boxes_of(i));
    return out;
}

namespace {

struct KeyEq {
    const SearchTree* tree;
    bool operator()(int a, int b) const {
        const auto& na = tree->node(a);
        const auto& nb = tree->node(b);
        if (na.region != nb.region) return false;
        const uint64_t* pa = tree->boxes_ptr(a);
        const uint64_t* pb = tree->boxes_ptr(b);
        for (int y = 0; y < tree->level().height; y++)
            if (pa[y] != pb[y]) return false;
        return true;
    }
};

struct KeyHash {
    const SearchTree* tree;
    size_t operator()(int i) const { return size_t(tree->node(i).key_hash); }
};

uint64_t boxes_hash(const BitRows& boxes, Square region) {
    return boxes.hash() * 31 + uint64_t(region.key() + 1);
}

class Search {
public:
    Search(const Level& level, Weights& weights, const SearchConfig& config,
           const BackwardTrajectory* hint, Rng& rng, const DistanceTable* table)
        : level_(level),
          weights_(weights),
          cfg_(config),
          rng_(rng),
          tree_(std::make_shared<SearchTree>(level, config.mode)),
          seen_(16, KeyHash{tree_.get()}, KeyEq{tree_.get()}) {
        if (table) {
            table_ = table;
        } else {
            owned_table_ = std::make_unique<DistanceTable>(level);
            table_ = owned_table_.get();
        }
        ctx_.level = &level_;
        ctx_.table = table_;
        ctx_.set = cfg_.features;
        ctx_.gamma = cfg_.gamma;
        ctx_.mode = cfg_.mode;
        ctx_.trajectory = hint;
        ctx_.prune_on_infinite = cfg_.dead_square_pruning;
    }

    SearchResult run() {
        if (cfg_.node_cap <= 0) throw Error("node_cap must be positive");
        SearchResult res;
        res.tree = tree_;

        int root = make_root(res);
        if (res.solved) return res;  // root already terminal

        while (true) {
            if (tree_->node(root).is(SearchTree::kExcluded)) break;
            int n = descend(root);
            if (n < 0) continue;  // a node got excluded on the way; restart

            int rewarded = expand(n);
            res.stats.expansions++;
            if (rewarded >= 0) {
                res.solved = true;
                res.best_leaf = rewarded;
                tree_->terminal_node = rewarded;
                res.solution = tree_->path_moves(rewarded);
                break;
            }
            if (res.stats.expansions >= cfg_.node_cap) break;
        }

        res.stats.solved = res.solved;
        res.stats.nodes_created = tree_->size();
        for (int i = 0; i < tree_->size(); i++)
            res.stats.max_depth = std::max(res.stats.max_depth, int(tree_->node(i).depth));
        return res;
    }

private:
    int make_root(SearchResult& res) {
        if (cfg_.mode == Mode::Forward) {
            State s = initial_state(level_);
            BitRows reach = player_reachable(level_, s);
            Square region = reach.first();
            int root = tree_->add_node(-1, Move{}, s.boxes, s.player, region,
                                       boxes_hash(s.boxes, region), 0);
            if (cfg_.transposition) seen_.insert(root);
            if (is_forward_goal(level_, s)) {
                tree_->node(root).flags |= SearchTree::kTerminal;
                tree_->terminal_node = root;
                res.solved = true;
                res.stats.solved = true;
                res.stats.nodes_created = 1;
                res.best_leaf = root;
            }
            return root;
        }
        // Backward: virtual root over the goal box configuration; expansion
        // spawns one child per connected free region.
        return tree_->add_node(-1, Move{}, level_.targets, kNoSquare, kNoSquare, 0,
                               SearchTree::kVirtual);
    }

    // Returns the leaf chosen by epsilon-greedy descent, or -1 when a node on
    // the way ran out of live children and was excluded.
    int descend(int root) {
        int n = root;
        while (tree_->node(n).is(SearchTree::kExpanded)) {
            alive_.clear();
            for (int c = tree_->node(n).first_child; c >= 0; c = tree_->node(c).next_sibling)
                if (!tree_->node(c).is(SearchTree::kExcluded)) alive_.push_back(c);
            if (alive_.empty()) {
                tree_->node(n).flags |= SearchTree::kExcluded;
                return -1;
            }
            int pick;
            if (cfg_.epsilon > 0 && rng_.next_double() < cfg_.epsilon) {
                pick = alive_[size_t(rng_.below(alive_.size()))];
            } else {
                pick = alive_[0];
                for (int c : alive_)
                    if (tree_->node(c).stored_value > tree_->node(pick).stored_value) pick = c;
            }
            n = pick;
        }
        return n;
    }

    // Expands n, returns the id of a rewarded child when one was created.
    int expand(int n) {
        const bool virtual_root = tree_->node(n).is(SearchTree::kVirtual);
        State parent_state = tree_->state_of(n);

        candidates_.clear();
        int last_child = -1, rewarded = -1, surviving = 0;

        auto consider = [&](const Move& move, const BitRows& boxes, Square player) {
            if (cfg_.mode == Mode::Forward && cfg_.dead_square_pruning && move.valid() &&
                table_->dead().test(step(move.box_from, move.dir)))
                return;

            BitRows open = level_.floor;
            open.and_not(boxes);
            Square region = flood_from(open, player).first();
            uint64_t hash = boxes_hash(boxes, region);

            int child = tree_->add_node(n, move, boxes, player, region, hash, 0);
            if (cfg_.transposition && !seen_.insert(child).second) {
                tree_->pop_node();
                return;
            }

            State child_state{boxes, player};
            auto fv = extract(ctx_, child_state);
            if (!fv) {
                if (cfg_.transposition) seen_.erase(child);
                tree_->pop_node();
                return;
            }

            bool reward = cfg_.mode == Mode::Forward ? is_forward_goal(level_, child_state)
                                                     : is_backward_goal(level_, child_state);
            double value = weights_.evaluate(*fv);
            tree_->node(child).stored_value = value;
            if (reward) {
                tree_->node(child).flags |= SearchTree::kTerminal;
                if (rewarded < 0) rewarded = child;
            }
            candidates_.push_back((reward ? 1.0 : 0.0) + (reward ? 0.0 : cfg_.gamma * value));
            tree_->link_child(n, child, last_child);
            surviving++;
        };

        if (virtual_root) {
            BitRows open = level_.floor;
            open.and_not(parent_state.boxes);
            BitRows remaining = open;
            while (true) {
                Square seed = remaining.first();
                if (!seed.valid()) break;
                BitRows comp = flood_from(remaining, seed);
                remaining.and_not(comp);
                consider(Move{}, parent_state.boxes, seed);
            }
        } else {
            std::vector<Move> moves = cfg_.mode == Mode::Forward
                                          ? legal_pushes(level_, parent_state)
                                          : legal_pulls(level_, parent_state);
            for (const Move& m : moves) {
                BitRows boxes = parent_state.boxes;
                boxes.reset(m.box_from);
                Square dest = step(m.box_from, m.dir);
                boxes.set(dest);
                Square player = cfg_.mode == Mode::Forward ? m.box_from : step(dest, m.dir);
                consider(m, boxes, player);
            }
        }

        double target = 0;
        for (double c : candidates_) target = std::max(target, c);
        if (surviving == 0) {
            tree_->node(n).flags |= SearchTree::kExcluded;
            target = 0;
        }

        if (cfg_.alpha > 0 && !virtual_root) {
            auto fv = extract(ctx_, parent_state);
            if (fv) weights_.td_update(*fv, target, cfg_.alpha);
        }
        tree_->node(n).stored_value = target;
        tree_->node(n).flags |= SearchTree::kExpanded;

        if (cfg_.expand_observer) cfg_.expand_observer(target, candidates_);
        return rewarded;
    }

    const Level& level_;
    Weights& weights_;
    const SearchConfig& cfg_;
    Rng& rng_;
    std::shared_ptr<SearchTree> tree_;
    std::unordered_set<int, KeyHash, KeyEq> seen_;
    const DistanceTable* table_ = nullptr;
    std::unique_ptr<DistanceTable> owned_table_;
    FeatureContext ctx_;
    std::vector<int> alive_;
    std::vector<double> candidates_;
};

}  // namespace

SearchResult run_search(const Level& level, Weights& weights, const SearchConfig& config,
                        const BackwardTrajectory* hint, Rng& rng, const DistanceTable* table) {
    Search search(level, weights, config, hint, rng, table);
    return search.run();
}

namespace {

int best_trajectory_leaf(const SearchTree& tree) {
    if (tree.terminal_node >= 0) return tree.terminal_node;
    int best = -1;
    for (int i = 0; i < tree.size(); i++) {
        const auto& n = tree.node(i);
        if (n.is(SearchTree::kVirtual) || n.first_child >= 0) continue;
        if (best < 0 || n.stored_value > tree.node(best).stored_value) best = i;
    }
    return best;
}

}  // namespace

BackwardTrajectory extract_backward_trajectory(const SearchTree& tree) {
    BackwardTrajectory traj;
    const Level& level = tree.level();

    int leaf = best_trajectory_leaf(tree);
    if (leaf < 0) {
        // Tree holds only the virtual root; degenerate trajectory at the goal.
        traj.states.push_back(level.targets);
    } else {
        traj.states = tree.path_boxes(leaf);
        if (traj.states.empty()) traj.states.push_back(level.targets);
    }

    // Forward packing order from the backward vacation order: a target still
    // occupied at the end is packed first; vacated targets follow in reverse
    // order of the step that last emptied them.
    std::vector<Square> targets = level.targets.to_squares();
    int last = int(traj.states.size()) - 1;
    std::vector<std::pair<int, Square>> vacated;  // (last occupied index, target)
    for (Square t : targets) {
        int v = -1;
        for (int i = last; i >= 0; i--)
            if (traj.states[size_t(i)].test(t)) {
                v = i;
                break;
            }
        if (v == last)
            traj.packing_order.push_back(t);  // never vacated, canonical order
        else
            vacated.emplace_back(v, t);
    }
    std::sort(vacated.begin(), vacated.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (auto& [v, t] : vacated) traj.packing_order.push_back(t);

    traj.finalize();
    return traj;
}

std::string reconstruct_lurd(const Level& level, const std::vector<Move>& pushes) {
    State state = initial_state(level);
    std::string out;

    for (const Move& m : pushes) {
        if (m.kind != MoveKind::Push || !state.boxes.test(m.box_from))
            throw Error("reconstruct_lurd: bad push sequence");
        Square goal = step(m.box_from, opposite(m.dir));

        if (state.player != goal) {
            // BFS walk to the pushing square, U,D,L,R expansion order.
            BitRows open = level.floor;
            open.and_not(state.boxes);
            if (!open.test(goal)) throw Error("reconstruct_lurd: pushing square blocked");

            std::vector<int16_t> parent_dir(size_t(level.height) * 64, -1);
            std::vector<Square> queue{state.player};
            parent_dir[size_t(state.player.key())] = 4;  // sentinel for the start
            bool found = false;
            for (size_t i = 0; i < queue.size() && !found; i++) {
                for (Dir d : kDirs) {
                    Square nx = step(queue[i], d);
                    if (!level.in_bounds(nx) || !open.test(nx)) continue;
                    auto& pd = parent_dir[size_t(nx.key())];
                    if (pd != -1) continue;
                    pd = int16_t(d);
                    queue.push_back(nx);
                    if (nx == goal) {
                        found = true;
                        break;
                    }
                }
            }
            if (!found) throw Error("reconstruct_lurd: pushing square unreachable");

            std::string walk;
            for (Square s = goal; s != state.player;) {
                Dir d = Dir(parent_dir[size_t(s.key())]);
                walk += walk_letter(d);
                s = step(s, opposite(d));
            }
            std::reverse(walk.begin(), walk.end());
            out += walk;
        }

        out += push_letter(m.dir);
        state.boxes.reset(m.box_from);
        state.boxes.set(step(m.box_from, m.dir));
        state.player = m.box_from;
    }
    return out;
}

}  // namespace soko
