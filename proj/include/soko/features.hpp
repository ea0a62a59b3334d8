#pragma once

#include "soko/board.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace soko {

enum class Feature : uint8_t { Targets, Distance, Gamma1, Gamma2, Connectivity, Overlap, Perm };

inline constexpr int kFeatureCount = 7;

const char* feature_name(Feature f);
std::optional<Feature> feature_from_name(std::string_view name);

// Ordered subset of the seven features; order is the enum order.
class FeatureSet {
public:
    FeatureSet() = default;

    static FeatureSet core(bool connectivity) {
        FeatureSet s;
        s.add(Feature::Targets).add(Feature::Distance).add(Feature::Gamma1).add(Feature::Gamma2);
        if (connectivity) s.add(Feature::Connectivity);
        return s;
    }

    static FeatureSet full(bool overlap, bool perm, bool connectivity) {
        FeatureSet s = core(connectivity);
        if (overlap) s.add(Feature::Overlap);
        if (perm) s.add(Feature::Perm);
        return s;
    }

    FeatureSet& add(Feature f) {
        mask_ |= uint8_t(1u << uint8_t(f));
        return *this;
    }
    bool contains(Feature f) const { return mask_ & (1u << uint8_t(f)); }
    bool has_hints() const { return contains(Feature::Overlap) || contains(Feature::Perm); }

    // Hint features stripped: the feature set of the backward agent.
    FeatureSet without_hints() const {
        FeatureSet s = *this;
        s.mask_ &= uint8_t(~((1u << uint8_t(Feature::Overlap)) | (1u << uint8_t(Feature::Perm))));
        return s;
    }

    int size() const;
    int index_of(Feature f) const;  // -1 when absent
    std::vector<Feature> list() const;

    std::string to_string() const;  // comma-separated names in order
    static FeatureSet parse(std::string_view names);

    bool operator==(const FeatureSet&) const = default;

private:
    uint8_t mask_ = 0;
};

struct FeatureVector {
    FeatureSet set;
    std::array<double, kFeatureCount> values{};  // first set.size() entries used

    double operator[](int i) const { return values[size_t(i)]; }
};

// Goal-to-leaf box configurations of a backward search branch, plus the
// forward packing order it implies.
struct BackwardTrajectory {
    std::vector<BitRows> states;        // states[0] == level targets
    std::vector<Square> packing_order;  // permutation of the targets
    std::vector<uint64_t> flat;         // states flattened, height words each
    int height = 0;

    void finalize();  // fills flat from states
};

// Per-square lower-bound push distances to each target on the boxless board.
class DistanceTable {
public:
    static constexpr uint16_t kInf = std::numeric_limits<uint16_t>::max();

    explicit DistanceTable(const Level& level);

    uint16_t dist(Square from, int target_ordinal) const {
        return d_[size_t(from.key()) * size_t(num_targets_) + size_t(target_ordinal)];
    }
    int num_targets() const { return num_targets_; }
    const std::vector<Square>& targets() const { return target_squares_; }

    // Squares whose rows are all infinite.
    const BitRows& dead() const { return dead_; }

    // Minimum-cost perfect matching of boxes onto targets; +inf when no
    // finite matching exists.
    double matching_cost(const BitRows& boxes) const;

private:
    int num_targets_ = 0;
    std::vector<Square> target_squares_;
    std::vector<uint16_t> d_;
    BitRows dead_;
};

double targets_feature(const Level& level, const State& state);
double gamma1(const Level& level, double gamma);

enum class Mode : uint8_t { Forward, Backward };

double gamma2(const Level& level, const State& state, double gamma, Mode mode);

// Raw connected-region count and its normalized form.
int connectivity_raw(const Level& level, const State& state);
double connectivity(const Level& level, const State& state);

double overlap(const State& state, const BackwardTrajectory& trajectory);
double perm(const Level& level, const State& state, const BackwardTrajectory& trajectory);

double normalize_distance(const Level& level, double matching);

// Everything extract() needs besides the state itself.
struct FeatureContext {
    const Level* level;
    const DistanceTable* table;
    FeatureSet set;
    double gamma = 0.95;
    Mode mode = Mode::Forward;
    const BackwardTrajectory* trajectory = nullptr;  // required when hints enabled, forward mode
    // When true, an infinite matching signals a dead state (forward pruning);
    // when false the Distance feature clamps to 1.
    bool prune_on_infinite = true;
};

// nullopt signals a pruned state (infinite Distance with pruning enabled).
std::optional<FeatureVector> extract(const FeatureContext& ctx, const State& state);

}  // namespace soko
