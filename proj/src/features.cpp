#include "soko/features.hpp"

#include <algorithm>
#include <cmath>

namespace soko {

namespace {
constexpr const char* kNames[kFeatureCount] = {"Targets",      "Distance", "Gamma1", "Gamma2",
                                               "Connectivity", "Overlap",  "Perm"};
// Finite stand-in for unreachable pairs inside the assignment solver; real
// costs never exceed 64*100 squares.
constexpr double kInfCost = 1e9;
}  // namespace

const char* feature_name(Feature f) { return kNames[uint8_t(f)]; }

std::optional<Feature> feature_from_name(std::string_view name) {
    for (int i = 0; i < kFeatureCount; i++)
        if (name == kNames[i]) return Feature(i);
    return std::nullopt;
}

int FeatureSet::size() const { return std::popcount(unsigned(mask_)); }

int FeatureSet::index_of(Feature f) const {
    if (!contains(f)) return -1;
    return std::popcount(unsigned(mask_ & ((1u << uint8_t(f)) - 1)));
}

std::vector<Feature> FeatureSet::list() const {
    std::vector<Feature> out;
    for (int i = 0; i < kFeatureCount; i++)
        if (contains(Feature(i))) out.push_back(Feature(i));
    return out;
}

std::string FeatureSet::to_string() const {
    std::string out;
    for (Feature f : list()) {
        if (!out.empty()) out += ',';
        out += feature_name(f);
    }
    return out;
}

FeatureSet FeatureSet::parse(std::string_view names) {
    FeatureSet s;
    size_t start = 0;
    while (start <= names.size()) {
        size_t end = names.find(',', start);
        if (end == std::string_view::npos) end = names.size();
        std::string_view tok = names.substr(start, end - start);
        if (!tok.empty()) {
            auto f = feature_from_name(tok);
            if (!f) throw Error("unknown feature name: " + std::string(tok));
            s.add(*f);
        }
        if (end == names.size()) break;
        start = end + 1;
    }
    return s;
}

void BackwardTrajectory::finalize() {
    height = states.empty() ? 0 : states.front().height();
    flat.clear();
    flat.reserve(states.size() * size_t(height));
    for (const BitRows& b : states)
        for (int y = 0; y < height; y++) flat.push_back(b.row(y));
}

DistanceTable::DistanceTable(const Level& level) {
    target_squares_ = level.targets.to_squares();
    num_targets_ = int(target_squares_.size());
    d_.assign(size_t(level.height) * 64 * size_t(num_targets_), kInf);

    // Pull BFS from each target: a push from p toward d needs floor at p+d
    // (the box destination) and at p-d (where the player stands).
    std::vector<Square> queue;
    for (int t = 0; t < num_targets_; t++) {
        queue.clear();
        Square goal = target_squares_[size_t(t)];
        auto at = [&](Square s) -> uint16_t& {
            return d_[size_t(s.key()) * size_t(num_targets_) + size_t(t)];
        };
        at(goal) = 0;
        queue.push_back(goal);
        for (size_t i = 0; i < queue.size(); i++) {
            Square q = queue[i];
            uint16_t next = uint16_t(at(q) + 1);
            for (Dir dir : kDirs) {
                Square pred = step(q, opposite(dir));
                Square behind = step(pred, opposite(dir));
                if (!level.is_floor(pred) || !level.is_floor(behind)) continue;
                if (at(pred) != kInf) continue;
                at(pred) = next;
                queue.push_back(pred);
            }
        }
    }

    dead_ = BitRows(level.height);
    level.floor.for_each([&](Square s) {
        for (int t = 0; t < num_targets_; t++)
            if (dist(s, t) != kInf) return;
        dead_.set(s);
    });
}

namespace {

// Compact Kuhn-Munkres on a square cost matrix (row = box, col = target).
double hungarian(const std::vector<double>& cost, int n) {
    std::vector<double> u(size_t(n) + 1, 0), v(size_t(n) + 1, 0);
    std::vector<int> p(size_t(n) + 1, 0), way(size_t(n) + 1, 0);
    for (int i = 1; i <= n; i++) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(size_t(n) + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(size_t(n) + 1, 0);
        do {
            used[size_t(j0)] = 1;
            int i0 = p[size_t(j0)], j1 = 0;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= n; j++) {
                if (used[size_t(j)]) continue;
                double cur = cost[size_t(i0 - 1) * size_t(n) + size_t(j - 1)] - u[size_t(i0)] - v[size_t(j)];
                if (cur < minv[size_t(j)]) {
                    minv[size_t(j)] = cur;
                    way[size_t(j)] = j0;
                }
                if (minv[size_t(j)] < delta) {
                    delta = minv[size_t(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; j++) {
                if (used[size_t(j)]) {
                    u[size_t(p[size_t(j)])] += delta;
                    v[size_t(j)] -= delta;
                } else {
                    minv[size_t(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[size_t(j0)] != 0);
        do {
            int j1 = way[size_t(j0)];
            p[size_t(j0)] = p[size_t(j1)];
            j0 = j1;
        } while (j0);
    }
    double total = 0;
    for (int j = 1; j <= n; j++) {
        int i = p[size_t(j)];
        if (i) total += cost[size_t(i - 1) * size_t(n) + size_t(j - 1)];
    }
    return total;
}

}  // namespace

double DistanceTable::matching_cost(const BitRows& boxes) const {
    int n = num_targets_;
    std::vector<double> cost(size_t(n) * size_t(n));
    int row = 0;
    bool any_inf = false;
    boxes.for_each([&](Square b) {
        for (int t = 0; t < n; t++) {
            uint16_t d = dist(b, t);
            cost[size_t(row) * size_t(n) + size_t(t)] = d == kInf ? kInfCost : double(d);
            if (d == kInf) any_inf = true;
        }
        row++;
    });
    if (row != n) throw Error("box count does not match target count");
    if (n == 0) return 0;
    double total = hungarian(cost, n);
    if (any_inf && total >= kInfCost / 2) return std::numeric_limits<double>::infinity();
    return total;
}

double targets_feature(const Level& level, const State& state) {
    return double((state.boxes & level.targets).count()) / double(level.box_count);
}

double gamma1(const Level& level, double gamma) { return std::pow(gamma, level.box_count); }

double gamma2(const Level& level, const State& state, double gamma, Mode mode) {
    int packed = (state.boxes & level.targets).count();
    int n = level.box_count;
    int exponent = mode == Mode::Forward ? n - packed : packed;
    return std::pow(gamma, exponent);
}

int connectivity_raw(const Level& level, const State& state) {
    BitRows open = level.floor;
    open.and_not(state.boxes);
    return count_regions(open);
}

double connectivity(const Level& level, const State& state) {
    double raw = connectivity_raw(level, state);
    double denom = std::max(1.0, double(level.floor_count) / 4.0);
    return std::min(1.0, (raw - 1.0) / denom);
}

double overlap(const State& state, const BackwardTrajectory& trajectory) {
    if (trajectory.states.empty()) return 0.0;
    int n = state.boxes.count();
    if (n == 0) return 0.0;
    int best = kern::ops().max_and_count(trajectory.flat.data(), int(trajectory.states.size()),
                                         state.boxes.words(), trajectory.height);
    return double(best) / double(n);
}

double perm(const Level& level, const State& state, const BackwardTrajectory& trajectory) {
    (void)level;
    int occupied = 0;
    for (Square t : trajectory.packing_order) {
        if (!state.boxes.test(t)) break;
        occupied++;
    }
    if (trajectory.packing_order.empty()) return 0.0;
    return double(occupied) / double(trajectory.packing_order.size());
}

double normalize_distance(const Level& level, double matching) {
    double denom = double(level.box_count) * double(level.width + level.height);
    return std::min(1.0, matching / denom);
}

std::optional<FeatureVector> extract(const FeatureContext& ctx, const State& state) {
    const Level& level = *ctx.level;
    FeatureVector fv;
    fv.set = ctx.set;

    double matching = ctx.table->matching_cost(state.boxes);
    if (std::isinf(matching)) {
        if (ctx.prune_on_infinite && ctx.mode == Mode::Forward) return std::nullopt;
        matching = std::numeric_limits<double>::max();  // clamps to 1 below
    }

    int i = 0;
    for (Feature f : ctx.set.list()) {
        double v = 0;
        switch (f) {
            case Feature::Targets: v = targets_feature(level, state); break;
            case Feature::Distance: v = normalize_distance(level, matching); break;
            case Feature::Gamma1: v = gamma1(level, ctx.gamma); break;
            case Feature::Gamma2: v = gamma2(level, state, ctx.gamma, ctx.mode); break;
            case Feature::Connectivity: v = connectivity(level, state); break;
            case Feature::Overlap:
                if (!ctx.trajectory) throw Error("Overlap requires a backward trajectory");
                v = overlap(state, *ctx.trajectory);
                break;
            case Feature::Perm:
                if (!ctx.trajectory) throw Error("Perm requires a backward trajectory");
                v = perm(level, state, *ctx.trajectory);
                break;
        }
        fv.values[size_t(i++)] = v;
    }
    return fv;
}

}  // namespace soko
