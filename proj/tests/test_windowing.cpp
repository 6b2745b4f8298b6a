#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "recovercast/windowing.hpp"

using namespace recovercast;

namespace {

WindowingErrorKind error_kind(auto&& fn) {
    try {
        fn();
    } catch (const WindowingError& e) {
        return e.kind();
    }
    FAIL("expected WindowingError");
    return WindowingErrorKind::InvalidArgument;
}

std::vector<double> iota_series(std::size_t n) {
    std::vector<double> v(n);
    std::iota(v.begin(), v.end(), 0.0);
    return v;
}

}  // namespace

TEST_SUITE("windowing") {

TEST_CASE("split keeps the tail for testing") {
    const auto s = split_train_test(std::vector<double>{1, 2, 3}, SplitSpec{1});
    CHECK(s.train == std::vector<double>{1, 2});
    CHECK(s.test == std::vector<double>{3});

    const auto days = iota_series(403);
    const auto paper = split_train_test(days, SplitSpec{24});
    CHECK(paper.train.size() == 379);
    CHECK(paper.test.size() == 24);
    auto joined = paper.train;
    joined.insert(joined.end(), paper.test.begin(), paper.test.end());
    CHECK(joined == days);

    CHECK(error_kind([] { split_train_test(std::vector<double>{1, 2}, SplitSpec{2}); }) ==
          WindowingErrorKind::TestTooLarge);
}

TEST_CASE("sliding windows") {
    const auto ds = make_windows(std::vector<double>{1, 2, 3, 4, 5}, 2);
    REQUIRE(ds.size() == 3);
    CHECK(std::vector<double>(ds.input(0).begin(), ds.input(0).end()) == std::vector<double>{1, 2});
    CHECK(std::vector<double>(ds.input(1).begin(), ds.input(1).end()) == std::vector<double>{2, 3});
    CHECK(std::vector<double>(ds.input(2).begin(), ds.input(2).end()) == std::vector<double>{3, 4});
    CHECK(std::vector<double>(ds.targets().begin(), ds.targets().end()) ==
          std::vector<double>{3, 4, 5});

    CHECK(error_kind([] { make_windows(std::vector<double>{1, 2}, 2); }) ==
          WindowingErrorKind::SeriesTooShort);
}

TEST_CASE("379-point series with window 30 gives 349 pairs") {
    const auto series = iota_series(379);
    const auto ds = make_windows(series, 30);
    std::size_t enumerated = 0;
    for (std::size_t start = 0; start + 30 < series.size(); ++start) ++enumerated;
    CHECK(enumerated == 349);
    CHECK(ds.size() == enumerated);
    // Adjacency: every target is the value right after its window.
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(ds.target(i) == series[i + 30]);
        CHECK(ds.input(i)[0] == series[i]);
    }
}

TEST_CASE("batch counts") {
    const auto ds = make_windows(iota_series(379), 30);
    const auto batches = make_batches(ds, 24, false, 0);
    CHECK(batches.size() == (349 + 23) / 24);
    CHECK(batches.size() == 15);
    for (std::size_t i = 0; i < 14; ++i) CHECK(batches[i].size() == 24);
    CHECK(batches.back().size() == 13);

    const auto small = make_windows(iota_series(7), 2);
    const auto one = make_batches(small, 24, true, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].size() == 5);

    CHECK(error_kind([] { make_batches(SupervisedDataset{}, 4, false, 0); }) ==
          WindowingErrorKind::EmptyDataset);
}

TEST_CASE("unshuffled batches keep dataset order") {
    const auto ds = make_windows(iota_series(20), 3);
    const auto batches = make_batches(ds, 4, false, 99);
    std::size_t k = 0;
    for (const auto& b : batches) {
        for (std::size_t r = 0; r < b.size(); ++r, ++k) {
            CHECK(b.targets[r] == ds.target(k));
            CHECK(b.row(r)[0] == ds.input(k)[0]);
        }
    }
}

TEST_CASE("shuffling is seeded") {
    const auto ds = make_windows(iota_series(120), 5);
    const auto a = make_batches(ds, 8, true, 5);
    const auto b = make_batches(ds, 8, true, 5);
    const auto c = make_batches(ds, 8, true, 6);
    bool same = true, differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        same = same && a[i].inputs == b[i].inputs && a[i].targets == b[i].targets;
        differs = differs || a[i].targets != c[i].targets;
    }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("batches cover the dataset exactly once") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> series(10 + rng() % 80);
        for (double& v : series) v = u(rng);
        const std::size_t window = 1 + rng() % 8;
        const auto ds = make_windows(series, window);
        const std::size_t bs = 1 + rng() % 30;
        const bool shuffle = rng() % 2;

        std::map<std::vector<double>, int> expected, seen;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            std::vector<double> key(ds.input(i).begin(), ds.input(i).end());
            key.push_back(ds.target(i));
            ++expected[key];
        }
        for (const auto& b : make_batches(ds, bs, shuffle, rng())) {
            REQUIRE(b.size() <= bs);
            for (std::size_t r = 0; r < b.size(); ++r) {
                std::vector<double> key(b.row(r).begin(), b.row(r).end());
                key.push_back(b.targets[r]);
                ++seen[key];
            }
        }
        CHECK(seen == expected);
    }
}

}  // TEST_SUITE
