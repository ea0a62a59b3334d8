#include "soko/pipeline.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <thread>

namespace soko {
namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<DistanceTable> build_tables(const std::vector<Level>& levels) {
    std::vector<DistanceTable> tables;
    tables.reserve(levels.size());
    for (const Level& lv : levels) tables.emplace_back(lv);
    return tables;
}

SearchConfig search_config(const TrainConfig& cfg, Mode mode, int cap, double alpha,
                           FeatureSet set) {
    SearchConfig sc;
    sc.mode = mode;
    sc.node_cap = cap;
    sc.epsilon = cfg.epsilon;
    sc.gamma = cfg.gamma;
    sc.alpha = alpha;
    sc.dead_square_pruning = cfg.dead_square_pruning;
    sc.transposition = cfg.transposition;
    sc.features = set;
    return sc;
}

}  // namespace

std::string TrainReport::to_csv() const {
    std::string out = "iteration,alpha,solved";
    for (Feature f : feature_order) out += std::string(",") + feature_name(f);
    out += '\n';
    for (const Row& r : rows) {
        out += std::to_string(r.iteration);
        out += ',';
        out += format_double(r.alpha);
        out += ',';
        out += std::to_string(r.solved);
        for (size_t i = 0; i < feature_order.size(); i++) {
            out += ',';
            out += format_double(r.weights[i]);
        }
        out += '\n';
    }
    return out;
}

std::pair<Weights, TrainReport> train_backward(const std::vector<Level>& levels,
                                               const TrainConfig& cfg) {
    if (levels.empty()) throw Error("train_backward: empty level list");
    FeatureSet bset = cfg.features.without_hints();
    Weights w = Weights::zeros(bset, cfg.gamma);
    Rng rng(cfg.seed);
    std::vector<DistanceTable> tables = build_tables(levels);

    TrainReport rep;
    rep.feature_order = bset.list();
    std::vector<size_t> order(levels.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;

    for (int it = 0; it < cfg.iterations; it++) {
        double alpha = cfg.alpha0 * std::pow(cfg.alpha_decay, it);
        rng.shuffle(order);
        int solved = 0;
        SearchConfig sc = search_config(cfg, Mode::Backward, cfg.backward_cap, alpha, bset);
        for (size_t idx : order) {
            SearchResult res = run_search(levels[idx], w, sc, nullptr, rng, &tables[idx]);
            solved += res.solved ? 1 : 0;
        }
        rep.rows.push_back({it, alpha, solved, w.w});
    }
    w.iterations = cfg.iterations;
    return {std::move(w), std::move(rep)};
}

BackwardTrajectory build_hint_context(const Level& level, const Weights& backward, int cap,
                                      double epsilon, bool dead_square_pruning, bool transposition,
                                      Rng& rng, const DistanceTable* table,
                                      SearchStats* stats_out) {
    SearchConfig sc;
    sc.mode = Mode::Backward;
    sc.node_cap = cap;
    sc.epsilon = epsilon;
    sc.gamma = backward.gamma;
    sc.alpha = 0;
    sc.dead_square_pruning = dead_square_pruning;
    sc.transposition = transposition;
    sc.features = backward.set;

    Weights frozen = backward;
    SearchResult res = run_search(level, frozen, sc, nullptr, rng, table);
    if (stats_out) *stats_out = res.stats;
    return extract_backward_trajectory(*res.tree);
}

std::pair<Weights, TrainReport> train_forward(const std::vector<Level>& levels,
                                              const Weights& backward, const TrainConfig& cfg) {
    if (levels.empty()) throw Error("train_forward: empty level list");
    if (backward.set != cfg.features.without_hints())
        throw Error("backward weights feature set does not match config");

    Rng rng(cfg.seed);
    std::vector<DistanceTable> tables = build_tables(levels);

    // Alg. 2: trajectories are built once per training instance, before the
    // RL loop.
    std::vector<BackwardTrajectory> trajectories;
    const bool hints = cfg.features.has_hints();
    if (hints) {
        trajectories.reserve(levels.size());
        for (size_t i = 0; i < levels.size(); i++)
            trajectories.push_back(build_hint_context(levels[i], backward, cfg.backward_cap,
                                                      cfg.epsilon, cfg.dead_square_pruning,
                                                      cfg.transposition, rng, &tables[i]));
    }

    Weights w = Weights::zeros(cfg.features, cfg.gamma);
    TrainReport rep;
    rep.feature_order = cfg.features.list();
    std::vector<size_t> order(levels.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;

    for (int it = 0; it < cfg.iterations; it++) {
        double alpha = cfg.alpha0 * std::pow(cfg.alpha_decay, it);
        rng.shuffle(order);
        int solved = 0;
        SearchConfig sc = search_config(cfg, Mode::Forward, cfg.forward_cap, alpha, cfg.features);
        for (size_t idx : order) {
            const BackwardTrajectory* hint = hints ? &trajectories[idx] : nullptr;
            SearchResult res = run_search(levels[idx], w, sc, hint, rng, &tables[idx]);
            solved += res.solved ? 1 : 0;
        }
        rep.rows.push_back({it, alpha, solved, w.w});
    }
    w.iterations = cfg.iterations;
    return {std::move(w), std::move(rep)};
}

SolveOutcome solve(const Level& level, const Weights& backward, const Weights& forward,
                   const SolveConfig& cfg) {
    if (forward.set.without_hints() != backward.set)
        throw Error("incompatible feature sets between forward and backward weights");
    if (forward.gamma != backward.gamma)
        throw Error("gamma mismatch between forward and backward weights");

    Rng rng(cfg.seed);
    DistanceTable table(level);
    SolveOutcome out;

    BackwardTrajectory trajectory;
    const bool hints = forward.set.has_hints();
    if (hints)
        trajectory = build_hint_context(level, backward, cfg.backward_cap, cfg.epsilon,
                                        cfg.dead_square_pruning, cfg.transposition, rng, &table,
                                        &out.backward_stats);

    SearchConfig sc;
    sc.mode = Mode::Forward;
    sc.node_cap = cfg.forward_cap;
    sc.epsilon = cfg.epsilon;
    sc.gamma = forward.gamma;
    sc.alpha = 0;
    sc.dead_square_pruning = cfg.dead_square_pruning;
    sc.transposition = cfg.transposition;
    sc.features = forward.set;

    Weights frozen = forward;
    SearchResult res = run_search(level, frozen, sc, hints ? &trajectory : nullptr, rng, &table);
    out.forward_stats = res.stats;
    out.solved = res.solved;
    if (res.solved) {
        out.pushes = res.solution;
        out.lurd = reconstruct_lurd(level, res.solution);
    }
    return out;
}

std::string BenchmarkReport::to_csv(bool include_timing) const {
    std::string out = "level,name,solved,backward_nodes,forward_nodes,pushes";
    if (include_timing) out += ",wall_ms";
    out += '\n';
    for (const BenchmarkRow& r : rows) {
        out += std::to_string(r.index);
        out += ',';
        out += csv_field(r.name);
        out += ',';
        out += r.solved ? '1' : '0';
        out += ',';
        out += std::to_string(r.backward_nodes);
        out += ',';
        out += std::to_string(r.forward_nodes);
        out += ',';
        out += std::to_string(r.pushes);
        if (include_timing) {
            out += ',';
            out += format_double(r.wall_ms);
        }
        out += '\n';
    }
    return out;
}

BenchmarkReport run_benchmark(const std::vector<Level>& levels, const Weights& backward,
                              const Weights& forward, const SolveConfig& config, int workers) {
    BenchmarkReport report;
    report.rows.resize(levels.size());
    std::atomic<size_t> next{0};

    auto work = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= levels.size()) break;
            SolveConfig cfg = config;
            cfg.seed = Rng::mix(config.seed, uint64_t(i));
            auto t0 = std::chrono::steady_clock::now();
            SolveOutcome out = solve(levels[i], backward, forward, cfg);
            auto t1 = std::chrono::steady_clock::now();

            BenchmarkRow& row = report.rows[i];
            row.index = int(i) + 1;
            row.name = levels[i].name;
            row.solved = out.solved;
            row.backward_nodes = out.backward_stats.expansions;
            row.forward_nodes = out.forward_stats.expansions;
            row.pushes = int(out.pushes.size());
            row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; t++) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    for (const BenchmarkRow& r : report.rows) report.solved_count += r.solved ? 1 : 0;
    return report;
}

}  // namespace soko
