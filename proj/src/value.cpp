#include "soko/value.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace soko {
namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

double parse_double(std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("bad float: " + std::string(s));
    return v;
}

}  // namespace

double Weights::evaluate(const FeatureVector& fv) const {
    if (fv.set != set)
        throw Error("feature set mismatch: weights {" + set.to_string() + "} vs vector {" +
                    fv.set.to_string() + "}");
    double sum = 0;
    int n = set.size();
    for (int i = 0; i < n; i++) sum += w[size_t(i)] * fv.values[size_t(i)];
    return sum;
}

void Weights::td_update(const FeatureVector& fv, double target, double alpha) {
    double err = target - evaluate(fv);
    int n = set.size();
    for (int i = 0; i < n; i++) w[size_t(i)] += alpha * err * fv.values[size_t(i)];
}

std::string weights_to_string(const Weights& weights) {
    std::string out;
    out += "gamma " + format_double(weights.gamma) + "\n";
    out += "iterations " + std::to_string(weights.iterations) + "\n";
    out += "features " + weights.set.to_string() + "\n";
    int i = 0;
    for (Feature f : weights.set.list()) {
        out += feature_name(f);
        out += '\t';
        out += format_double(weights.w[size_t(i++)]);
        out += '\n';
    }
    return out;
}

Weights weights_from_string(std::string_view text) {
    Weights out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool have_gamma = false, have_features = false;
    int weights_seen = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) continue;
        size_t sep = line.find_first_of(" \t");
        if (sep == std::string::npos) throw Error("weights line " + std::to_string(lineno) + ": malformed");
        std::string key = line.substr(0, sep);
        std::string val = line.substr(sep + 1);
        if (key == "gamma") {
            out.gamma = parse_double(val);
            have_gamma = true;
        } else if (key == "iterations") {
            out.iterations = std::stoi(val);
        } else if (key == "features") {
            out.set = FeatureSet::parse(val);
            have_features = true;
        } else {
            auto f = feature_from_name(key);
            if (!f) throw Error("weights line " + std::to_string(lineno) + ": unknown feature " + key);
            if (!have_features) throw Error("weights file: feature line before features header");
            int idx = out.set.index_of(*f);
            if (idx < 0) throw Error("weights file: " + key + " not in declared feature set");
            out.w[size_t(idx)] = parse_double(val);
            weights_seen++;
        }
    }
    if (!have_gamma || !have_features) throw Error("weights file: missing gamma or features header");
    if (weights_seen != out.set.size()) throw Error("weights file: missing weight lines");
    return out;
}

void save_weights(const Weights& weights, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << weights_to_string(weights);
    if (!out) throw Error("write failed: " + path);
}

Weights load_weights(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return weights_from_string(ss.str());
}

}  // namespace soko
