#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "soko/bitrows.hpp"
#include "soko/kernels.hpp"
#include "soko/rng.hpp"

#include <bit>
#include <cstdint>
#include <queue>
#include <vector>

using namespace soko;

namespace {

// Plain queue-based flood fill, independent of the word-level kernels.
std::vector<uint64_t> flood_bfs(std::vector<uint64_t> reach, const std::vector<uint64_t>& open) {
    int h = int(open.size());
    auto at = [](const std::vector<uint64_t>& g, int x, int y) { return (g[size_t(y)] >> x) & 1; };
    std::queue<std::pair<int, int>> q;
    std::vector<uint64_t> out(open.size(), 0);
    for (int y = 0; y < h; y++)
        for (int x = 0; x < 64; x++)
            if (at(reach, x, y) && at(open, x, y)) {
                out[size_t(y)] |= uint64_t(1) << x;
                q.emplace(x, y);
            }
    const int ddx[4] = {0, 0, -1, 1}, ddy[4] = {-1, 1, 0, 0};
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        for (int d = 0; d < 4; d++) {
            int nx = x + ddx[d], ny = y + ddy[d];
            if (nx < 0 || nx >= 64 || ny < 0 || ny >= h) continue;
            if (!at(open, nx, ny) || at(out, nx, ny)) continue;
            out[size_t(ny)] |= uint64_t(1) << nx;
            q.emplace(nx, ny);
        }
    }
    return out;
}

std::vector<uint64_t> random_grid(Rng& rng, int h, int fill_shift) {
    std::vector<uint64_t> g(static_cast<size_t>(h), 0);
    for (auto& w : g) {
        w = rng.next();
        for (int k = 0; k < fill_shift; k++) w &= rng.next();
    }
    return g;
}

}  // namespace

TEST_CASE("flood matches queue-based reference on random grids") {
    Rng rng(1234);
    for (int iter = 0; iter < 300; iter++) {
        int h = 1 + int(rng.below(32));
        auto open = random_grid(rng, h, int(rng.below(2)));
        auto seed = random_grid(rng, h, 2);
        auto expect = flood_bfs(seed, open);

        auto got = seed;
        kern::scalar_ops().flood(got.data(), open.data(), h);
        CHECK(got == expect);
    }
}

TEST_CASE("avx2 flood equals scalar flood") {
    if (!kern::avx2_supported()) return;
    Rng rng(99);
    for (int iter = 0; iter < 500; iter++) {
        int h = 1 + int(rng.below(40));
        auto open = random_grid(rng, h, int(rng.below(2)));
        auto seed = random_grid(rng, h, 2);

        auto a = seed, b = seed;
        kern::scalar_ops().flood(a.data(), open.data(), h);
        kern::avx2_ops().flood(b.data(), open.data(), h);
        CHECK(a == b);
    }
}

TEST_CASE("max_and_count: scalar vs naive and avx2 vs scalar") {
    Rng rng(7);
    for (int iter = 0; iter < 200; iter++) {
        int h = 1 + int(rng.below(30));
        int nblocks = int(rng.below(20));
        std::vector<uint64_t> blocks(size_t(nblocks) * h);
        for (auto& w : blocks) w = rng.next() & rng.next();
        auto query = random_grid(rng, h, 1);

        int naive = 0;
        for (int b = 0; b < nblocks; b++) {
            int n = 0;
            for (int y = 0; y < h; y++) n += std::popcount(blocks[size_t(b) * h + y] & query[size_t(y)]);
            naive = std::max(naive, n);
        }
        CHECK(kern::scalar_ops().max_and_count(blocks.data(), nblocks, query.data(), h) == naive);
        if (kern::avx2_supported())
            CHECK(kern::avx2_ops().max_and_count(blocks.data(), nblocks, query.data(), h) == naive);
    }
}

TEST_CASE("kernel selection") {
    kern::force("scalar");
    CHECK(std::string(kern::ops().name) == "scalar");
    kern::force(nullptr);
    if (kern::avx2_supported()) CHECK(std::string(kern::ops().name) == "avx2");
}

TEST_CASE("BitRows basics") {
    BitRows b(4);
    CHECK(b.none());
    b.set({3, 2});
    b.set({0, 0});
    CHECK(b.count() == 2);
    CHECK(b.first() == Square(0, 0));
    CHECK(b.test({3, 2}));
    b.reset({0, 0});
    CHECK(b.first() == Square(3, 2));

    BitRows open(3);
    for (int x = 0; x < 5; x++) open.set({x, 1});
    open.set({2, 0});
    CHECK(count_regions(open) == 1);
    open.reset({2, 1});  // split the row, (2,0) now isolated with (2,1) gone
    CHECK(count_regions(open) == 3);

    Square region_first = kNoSquare;
    count_regions(open, Square(4, 1), &region_first);
    CHECK(region_first == Square(3, 1));
}
