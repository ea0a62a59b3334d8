#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "soko/rng.hpp"
#include "soko/value.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace soko;

namespace {

FeatureVector make_fv(FeatureSet set, std::initializer_list<double> vals) {
    FeatureVector fv;
    fv.set = set;
    int i = 0;
    for (double v : vals) fv.values[size_t(i++)] = v;
    return fv;
}

}  // namespace

TEST_CASE("evaluate") {
    FeatureSet one;
    one.add(Feature::Targets);
    Weights w = Weights::zeros(one, 0.95);

    CHECK(w.evaluate(make_fv(one, {1.0})) == 0.0);  // zero weights

    w.w[0] = 0.5;
    CHECK(w.evaluate(make_fv(one, {1.0})) == 0.5);

    FeatureSet other;
    other.add(Feature::Distance);
    CHECK_THROWS_AS(w.evaluate(make_fv(other, {1.0})), Error);
}

TEST_CASE("evaluate matches naive summation on random vectors") {
    FeatureSet set = FeatureSet::full(true, true, true);
    Rng rng(3);
    for (int iter = 0; iter < 100; iter++) {
        Weights w = Weights::zeros(set, 0.95);
        FeatureVector fv;
        fv.set = set;
        double naive = 0;
        for (int i = 0; i < set.size(); i++) {
            w.w[size_t(i)] = rng.next_double() * 4 - 2;
            fv.values[size_t(i)] = rng.next_double();
        }
        for (int i = 0; i < set.size(); i++) naive += w.w[size_t(i)] * fv.values[size_t(i)];
        CHECK(w.evaluate(fv) == doctest::Approx(naive).epsilon(1e-12));
    }
}

TEST_CASE("evaluate is linear") {
    FeatureSet set = FeatureSet::core(true);
    Rng rng(5);
    Weights w = Weights::zeros(set, 0.95);
    for (int i = 0; i < set.size(); i++) w.w[size_t(i)] = rng.next_double() * 2 - 1;
    for (int iter = 0; iter < 50; iter++) {
        FeatureVector f1, f2, combo;
        f1.set = f2.set = combo.set = set;
        double a = rng.next_double() * 3, b = rng.next_double() * 3;
        for (int i = 0; i < set.size(); i++) {
            f1.values[size_t(i)] = rng.next_double();
            f2.values[size_t(i)] = rng.next_double();
            combo.values[size_t(i)] = a * f1.values[size_t(i)] + b * f2.values[size_t(i)];
        }
        CHECK(w.evaluate(combo) ==
              doctest::Approx(a * w.evaluate(f1) + b * w.evaluate(f2)).epsilon(1e-9));
    }
}

TEST_CASE("td_update single step arithmetic") {
    FeatureSet one;
    one.add(Feature::Targets);
    Weights w = Weights::zeros(one, 0.95);
    w.w[0] = 0.5;
    w.td_update(make_fv(one, {1.0}), 1.0, 0.01);
    CHECK(w.w[0] == doctest::Approx(0.505).epsilon(1e-15));
}

TEST_CASE("td_update fixed point and alpha=0 identity") {
    FeatureSet set = FeatureSet::core(false);
    Weights w = Weights::zeros(set, 0.95);
    for (int i = 0; i < set.size(); i++) w.w[size_t(i)] = 0.25 * (i + 1);
    FeatureVector fv = make_fv(set, {0.3, 0.7, 0.2, 0.9});

    Weights before = w;
    w.td_update(fv, before.evaluate(fv), 0.05);  // target == current value
    for (int i = 0; i < set.size(); i++) CHECK(w.w[size_t(i)] == before.w[size_t(i)]);

    w.td_update(fv, 123.0, 0.0);  // alpha = 0
    for (int i = 0; i < set.size(); i++) CHECK(w.w[size_t(i)] == before.w[size_t(i)]);
}

TEST_CASE("td_update closed-form value change") {
    // One update changes w.f by alpha * (target - V) * ||f||^2.
    FeatureSet set = FeatureSet::full(true, true, true);
    Rng rng(9);
    for (int iter = 0; iter < 100; iter++) {
        Weights w = Weights::zeros(set, 0.95);
        FeatureVector fv;
        fv.set = set;
        double norm2 = 0;
        for (int i = 0; i < set.size(); i++) {
            w.w[size_t(i)] = rng.next_double() - 0.5;
            fv.values[size_t(i)] = rng.next_double();
            norm2 += fv.values[size_t(i)] * fv.values[size_t(i)];
        }
        double target = rng.next_double() * 2 - 0.5;
        double alpha = 0.02;
        double v0 = w.evaluate(fv);
        w.td_update(fv, target, alpha);
        double v1 = w.evaluate(fv);
        CHECK(v1 - v0 == doctest::Approx(alpha * (target - v0) * norm2).epsilon(1e-12));
    }
}

TEST_CASE("repeated updates converge to the target") {
    FeatureSet set = FeatureSet::core(true);
    Weights w = Weights::zeros(set, 0.95);
    FeatureVector fv = make_fv(set, {0.4, 0.8, 0.9025, 0.95, 0.1});
    double target = 0.73;
    for (int i = 0; i < 2000; i++) w.td_update(fv, target, 0.05);
    CHECK(std::abs(w.evaluate(fv) - target) < 1e-6);
}

TEST_CASE("weights round-trip bitwise through the text format") {
    FeatureSet set = FeatureSet::full(true, false, true);
    Rng rng(13);
    Weights w = Weights::zeros(set, 0.95);
    w.iterations = 100;
    for (int i = 0; i < set.size(); i++) w.w[size_t(i)] = (rng.next_double() - 0.5) * 1e3;
    w.w[0] = 1.0 / 3.0;

    std::string text = weights_to_string(w);
    Weights back = weights_from_string(text);
    CHECK(back.set == w.set);
    CHECK(back.gamma == w.gamma);
    CHECK(back.iterations == 100);
    for (int i = 0; i < set.size(); i++) CHECK(back.w[size_t(i)] == w.w[size_t(i)]);  // exact

    auto path = std::filesystem::temp_directory_path() / "soko_weights_test.txt";
    save_weights(w, path.string());
    Weights loaded = load_weights(path.string());
    for (int i = 0; i < set.size(); i++) CHECK(loaded.w[size_t(i)] == w.w[size_t(i)]);
    std::filesystem::remove(path);
}

TEST_CASE("weights file carries gamma metadata and rejects damage") {
    FeatureSet set = FeatureSet::core(false);
    Weights w = Weights::zeros(set, 0.9);
    std::string text = weights_to_string(w);
    CHECK(weights_from_string(text).gamma == 0.9);

    CHECK_THROWS_AS(weights_from_string("gamma 0.95\niterations 1\n"), Error);
    CHECK_THROWS_AS(weights_from_string("iterations 1\nfeatures Targets\nTargets\t0\n"), Error);
    // Feature line outside the declared set.
    CHECK_THROWS_AS(
        weights_from_string("gamma 0.95\niterations 1\nfeatures Targets\nDistance\t0.5\n"), Error);
}
