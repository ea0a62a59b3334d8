#pragma once

#include "soko/search.hpp"

#include <array>
#include <string>
#include <vector>

namespace soko {

struct TrainConfig {
    int iterations = 100;
    double alpha0 = 0.01;
    double alpha_decay = 0.98;
    int backward_cap = 50;
    int forward_cap = 100;
    double epsilon = 0.1;
    double gamma = 0.95;
    FeatureSet features = FeatureSet::full(true, true, true);
    uint64_t seed = 0;
    bool dead_square_pruning = true;
    bool transposition = true;
};

struct TrainReport {
    std::vector<Feature> feature_order;
    struct Row {
        int iteration;
        double alpha;
        int solved;
        std::array<double, kFeatureCount> weights;
    };
    std::vector<Row> rows;

    // Columns: iteration, alpha, solved, then one column per feature weight.
    std::string to_csv() const;
};

// Trains the relaxed backward agent: pull moves, episodes from the goal
// configuration, reward once every box is off every target.
std::pair<Weights, TrainReport> train_backward(const std::vector<Level>& levels,
                                               const TrainConfig& config);

// Frozen-weights backward search followed by trajectory extraction; a
// trajectory is returned even when the relaxed goal was not reached.
BackwardTrajectory build_hint_context(const Level& level, const Weights& backward, int cap,
                                      double epsilon, bool dead_square_pruning, bool transposition,
                                      Rng& rng, const DistanceTable* table = nullptr,
                                      SearchStats* stats_out = nullptr);

// Trains the forward agent over features augmented with the hint features,
// one precomputed backward trajectory per training level.
std::pair<Weights, TrainReport> train_forward(const std::vector<Level>& levels,
                                              const Weights& backward, const TrainConfig& config);

struct SolveConfig {
    int backward_cap = 10000;
    int forward_cap = 50000;
    double epsilon = 0.1;
    uint64_t seed = 0;
    bool dead_square_pruning = true;
    bool transposition = true;
};

struct SolveOutcome {
    bool solved = false;
    std::string lurd;
    std::vector<Move> pushes;
    SearchStats backward_stats;  // all zero when hints are disabled
    SearchStats forward_stats;
};

// Inference: backward hint context at the backward cap, then a frozen
// forward search with hint features.
SolveOutcome solve(const Level& level, const Weights& backward, const Weights& forward,
                   const SolveConfig& config);

struct BenchmarkRow {
    int index = 0;  // 1-based position in the collection
    std::string name;
    bool solved = false;
    int backward_nodes = 0;
    int forward_nodes = 0;
    int pushes = 0;
    double wall_ms = 0;
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows;
    int solved_count = 0;

    // Columns: level, name, solved, backward_nodes, forward_nodes, pushes
    // and, when include_timing, wall_ms.
    std::string to_csv(bool include_timing) const;
};

// Solves every level with frozen weights; per-level RNG streams derive from
// (seed, index) so results are reproducible for any worker count.
BenchmarkReport run_benchmark(const std::vector<Level>& levels, const Weights& backward,
                              const Weights& forward, const SolveConfig& config, int workers);

}  // namespace soko
