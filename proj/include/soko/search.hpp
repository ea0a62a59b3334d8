#pragma once

#include "soko/features.hpp"
#include "soko/rng.hpp"
#include "soko/value.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace soko {

struct SearchConfig {
    Mode mode = Mode::Forward;
    int node_cap = 1000;  // expansion budget
    double epsilon = 0.1;
    double gamma = 0.95;
    double alpha = 0.0;  // 0 freezes the weights
    bool dead_square_pruning = true;
    bool transposition = true;
    FeatureSet features;

    // Test hook: receives each expansion's backup target and the per-child
    // backup candidates r + gamma*V, in creation order.
    std::function<void(double target, const std::vector<double>& candidates)> expand_observer;
};

// Expandable tree over states. Box sets live in one arena, height words per
// node; nodes reference their slice by index.
class SearchTree {
public:
    static constexpr uint8_t kExpanded = 1, kTerminal = 2, kExcluded = 4, kVirtual = 8;

    struct Node {
        int32_t parent = -1;
        int32_t first_child = -1;
        int32_t next_sibling = -1;
        int32_t depth = 0;
        Move move;  // edge from parent; invalid for the root and region children
        double stored_value = 0;
        uint64_t key_hash = 0;
        Square player = kNoSquare;
        Square region = kNoSquare;  // canonical square of the player's region
        uint8_t flags = 0;

        bool is(uint8_t flag) const { return flags & flag; }
    };

    SearchTree(const Level& level, Mode mode) : level_(&level), mode_(mode), h_(level.height) {}

    const Level& level() const { return *level_; }
    Mode mode() const { return mode_; }
    int size() const { return int(nodes_.size()); }
    Node& node(int i) { return nodes_[size_t(i)]; }
    const Node& node(int i) const { return nodes_[size_t(i)]; }

    const uint64_t* boxes_ptr(int i) const { return arena_.data() + size_t(i) * size_t(h_); }
    BitRows boxes_of(int i) const {
        BitRows b(h_);
        const uint64_t* p = boxes_ptr(i);
        std::copy(p, p + h_, b.words());
        return b;
    }
    State state_of(int i) const { return State{boxes_of(i), node(i).player}; }

    int add_node(int parent, const Move& move, const BitRows& boxes, Square player, Square region,
                 uint64_t key_hash, uint8_t flags);
    void pop_node();  // removes the most recently added node (not yet linked)
    void link_child(int parent, int child, int& last_child);

    // Moves along the root-to-node branch, virtual edges skipped.
    std::vector<Move> path_moves(int node) const;
    // Box sets along the root-to-node branch, virtual root skipped.
    std::vector<BitRows> path_boxes(int node) const;

    int terminal_node = -1;  // rewarded node when the search ended in one

private:
    const Level* level_;
    Mode mode_;
    int h_;
    std::vector<Node> nodes_;
    std::vector<uint64_t> arena_;
};

struct SearchStats {
    int expansions = 0;
    int nodes_created = 0;
    int max_depth = 0;
    int pruned_dead = 0;
    int pruned_transposition = 0;
    bool solved = false;
};

struct SearchResult {
    bool solved = false;
    std::vector<Move> solution;  // root-to-goal moves (pushes forward, pulls backward)
    SearchStats stats;
    int best_leaf = -1;
    std::shared_ptr<SearchTree> tree;
};

// Repeated epsilon-greedy descent + leaf expansion with off-policy TD(0)
// backups, shared by training (alpha > 0) and inference (alpha = 0).
// `table` may carry a precomputed DistanceTable for the level.
SearchResult run_search(const Level& level, Weights& weights, const SearchConfig& config,
                        const BackwardTrajectory* hint, Rng& rng,
                        const DistanceTable* table = nullptr);

// Branch to the rewarded node when solved, otherwise to the best-valued
// leaf (ties to the earliest created), with the implied packing order.
BackwardTrajectory extract_backward_trajectory(const SearchTree& tree);

// LURD text for a push solution: lowercase player steps (BFS shortest walk,
// ties by U,D,L,R), uppercase pushes.
std::string reconstruct_lurd(const Level& level, const std::vector<Move>& pushes);

}  // namespace soko
