#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "egonet/error.hpp"
#include "egonet/mean_shift.hpp"

using namespace egonet;

namespace {

/// Membership as a set of sorted value lists, independent of input indices.
std::vector<std::vector<double>> groups(const std::vector<double>& values, const std::vector<MeanShiftCluster>& cs) {
    std::vector<std::vector<double>> out;
    for (const auto& c : cs) {
        std::vector<double> g;
        for (auto i : c.members) g.push_back(values[i]);
        std::sort(g.begin(), g.end());
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("identical values form one cluster at that value") {
    const std::vector<double> v(7, 2.5);
    const auto cs = mean_shift_1d(v, 0.3);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].center == doctest::Approx(2.5));
    CHECK(cs[0].members.size() == 7);
}

TEST_CASE("two well separated groups") {
    const std::vector<double> v{0.9, 1.0, 1.1, 9.8, 10.0, 10.2};
    const auto cs = mean_shift_1d(v, 1.0);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].center == doctest::Approx(10.0).epsilon(1e-6));
    CHECK(cs[1].center == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(cs[0].members == std::vector<std::size_t>{3, 4, 5});
    CHECK(cs[1].members == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("points farther apart than the bandwidth stay singletons") {
    const std::vector<double> v{0.0, 1.5};
    const auto cs = mean_shift_1d(v, 1.0);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].center == 1.5);
    CHECK(cs[1].center == 0.0);
}

TEST_CASE("window is closed: a neighbour at exactly the bandwidth is pulled in") {
    const std::vector<double> v{0.0, 1.0};
    const auto modes = mean_shift_modes(v, 1.0);
    CHECK(modes[0] == doctest::Approx(0.5));
    CHECK(modes[1] == doctest::Approx(0.5));
    CHECK(mean_shift_1d(v, 1.0).size() == 1);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(mean_shift_1d(std::vector<double>{}, 1.0), ValidationError);
    CHECK_THROWS_AS(mean_shift_1d(std::vector<double>{1.0}, 0.0), ValidationError);
    CHECK_THROWS_AS(mean_shift_1d(std::vector<double>{1.0}, -1.0), ValidationError);
    CHECK_THROWS_AS(mean_shift_1d(std::vector<double>{1.0, std::nan("")}, 1.0), ValidationError);
    CHECK_THROWS_AS(mean_shift_1d(std::vector<double>{std::numeric_limits<double>::infinity()}, 1.0),
                    ValidationError);
}

TEST_CASE("clusters sorted by descending center and partition the input") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(40);
        for (auto& x : v) x = n(rng);
        const auto cs = mean_shift_1d(v, 0.7);
        std::vector<std::size_t> all;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (k) CHECK(cs[k - 1].center > cs[k].center);
            CHECK(std::is_sorted(cs[k].members.begin(), cs[k].members.end()));
            all.insert(all.end(), cs[k].members.begin(), cs[k].members.end());
        }
        std::sort(all.begin(), all.end());
        std::vector<std::size_t> expect(v.size());
        std::iota(expect.begin(), expect.end(), 0);
        CHECK(all == expect);
    }
}

TEST_CASE("membership is invariant under input permutation") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(30);
        for (auto& x : v) x = u(rng);
        auto w = v;
        std::shuffle(w.begin(), w.end(), rng);
        const auto a = mean_shift_1d(v, 0.8);
        const auto b = mean_shift_1d(w, 0.8);
        REQUIRE(a.size() == b.size());
        CHECK(groups(v, a) == groups(w, b));
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].center == doctest::Approx(b[k].center).epsilon(1e-9));
    }
}

TEST_CASE("membership is invariant under translation") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(25);
        for (auto& x : v) x = u(rng);
        std::vector<double> shifted = v;
        for (auto& x : shifted) x += 3.25;
        const auto a = mean_shift_1d(v, 0.5);
        const auto b = mean_shift_1d(shifted, 0.5);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].members == b[k].members);
    }
}

TEST_CASE("pairwise_gap_quantile") {
    const std::vector<double> v{0.0, 1.0, 3.0};
    // gaps 1, 2, 3
    CHECK(pairwise_gap_quantile(v, 0.0) == doctest::Approx(1.0));
    CHECK(pairwise_gap_quantile(v, 0.5) == doctest::Approx(2.0));
    CHECK(pairwise_gap_quantile(v, 1.0) == doctest::Approx(3.0));
    CHECK(pairwise_gap_quantile(v, 0.25) == doctest::Approx(1.5));
    CHECK_THROWS_AS(pairwise_gap_quantile(std::vector<double>{1.0}, 0.3), ValidationError);
    CHECK_THROWS_AS(pairwise_gap_quantile(v, 1.5), ValidationError);
}
