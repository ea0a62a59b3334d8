#pragma once

#include "soko/features.hpp"

#include <array>
#include <string>

namespace soko {

// Linear value function V(s) = w . f(s), one weight per enabled feature.
struct Weights {
    FeatureSet set;
    std::array<double, kFeatureCount> w{};  // first set.size() entries used
    double gamma = 0.95;
    int iterations = 0;

    static Weights zeros(FeatureSet set, double gamma) {
        Weights out;
        out.set = set;
        out.gamma = gamma;
        return out;
    }

    double evaluate(const FeatureVector& fv) const;

    // w += alpha * (target - w.f) * f
    void td_update(const FeatureVector& fv, double target, double alpha);

    double weight_of(Feature f) const {
        int i = set.index_of(f);
        return i < 0 ? 0.0 : w[size_t(i)];
    }
};

// Line-oriented text format:
//   gamma <float>
//   iterations <int>
//   features <comma-separated names>
//   <name>\t<float>        (one line per feature, round-trip precision)
std::string weights_to_string(const Weights& weights);
Weights weights_from_string(std::string_view text);

void save_weights(const Weights& weights, const std::string& path);
Weights load_weights(const std::string& path);

}  // namespace soko
