#include <doctest.h>

#include <random>

#include "egonet/dynamic.hpp"
#include "egonet/error.hpp"
#include "egonet/synth.hpp"
#include "helpers.hpp"

using namespace egonet;
using namespace egonet::testing;

namespace {

SnapshotSeries series_of(std::vector<std::map<UserId, int>> memberships) {
    SnapshotSeries s;
    s.ego_id = "ego";
    for (std::size_t i = 0; i < memberships.size(); ++i)
        s.windows.push_back({day0() + days(30 * static_cast<int>(i)), day0() + days(30 * static_cast<int>(i) + 365)});
    s.ring_membership = std::move(memberships);
    return s;
}

}  // namespace

TEST_CASE("make_windows counts") {
    CHECK(make_windows(day0(), day0() + days(730)).size() == 13);
    CHECK(make_windows(day0(), day0() + days(400)).size() == 2);
    CHECK(make_windows(day0(), day0() + days(300)).empty());
    CHECK(make_windows(day0(), day0() + days(365)).size() == 1);
    const auto w = make_windows(day0(), day0() + days(400));
    CHECK(w[1].start == day0() + days(30));
    CHECK(w[1].length() == days(365));
    CHECK_THROWS_AS(make_windows(day0(), day0() + days(400), days(0)), ValidationError);
}

TEST_CASE("make_windows matches brute-force enumeration") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const auto span = days(static_cast<int>(rng() % 2000));
        const auto width = days(1 + static_cast<int>(rng() % 400));
        const auto step = days(1 + static_cast<int>(rng() % 60));
        std::size_t brute = 0;
        for (Seconds off{0}; off + width <= span; off += step) ++brute;
        CHECK(make_windows(day0(), day0() + span, width, step).size() == brute);
        if (span >= width) CHECK(brute == static_cast<std::size_t>((span - width) / step) + 1);
    }
}

TEST_CASE("align_ring") {
    CHECK(align_ring(1, 3, RingAlignment::Inner) == 1);
    CHECK(align_ring(3, 3, RingAlignment::Inner) == 3);
    CHECK(align_ring(7, 8, RingAlignment::Inner) == 5);
    CHECK(align_ring(3, 3, RingAlignment::Outer) == 5);
    CHECK(align_ring(1, 3, RingAlignment::Outer) == 3);
    CHECK(align_ring(1, 8, RingAlignment::Outer) == 1);
    CHECK(align_ring(8, 8, RingAlignment::Outer) == 5);
}

TEST_CASE("jaccard examples") {
    const auto same = series_of({{{"a", 1}, {"b", 2}}, {{"a", 1}, {"b", 2}}});
    const auto js = jaccard_per_ring(same);
    CHECK(*js[0].mean == 1.0);
    CHECK(*js[1].mean == 1.0);
    CHECK_FALSE(js[2].mean.has_value());
    CHECK(js[2].samples == 0);

    const auto half = series_of({{{"a", 1}, {"b", 1}, {"c", 1}}, {{"b", 1}, {"c", 1}, {"d", 1}}});
    CHECK(*jaccard_per_ring(half)[0].mean == doctest::Approx(0.5));

    const auto disjoint = series_of({{{"a", 1}}, {{"b", 1}}});
    CHECK(*jaccard_per_ring(disjoint)[0].mean == 0.0);

    CHECK_THROWS_AS(jaccard_per_ring(series_of({{{"a", 1}}})), ValidationError);
}

TEST_CASE("jaccard skips empty unions and is symmetric") {
    const auto s = series_of({{{"a", 1}}, {}, {{"a", 1}}});
    const auto js = jaccard_per_ring(s);
    CHECK(js[0].samples == 2);
    CHECK(*js[0].mean == 0.0);

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        std::map<UserId, int> a, b;
        for (int k = 0; k < 12; ++k) {
            if (rng() % 2) a["u" + std::to_string(k)] = 1 + static_cast<int>(rng() % 5);
            if (rng() % 2) b["u" + std::to_string(k)] = 1 + static_cast<int>(rng() % 5);
        }
        const auto ab = jaccard_per_ring(series_of({a, b}));
        const auto ba = jaccard_per_ring(series_of({b, a}));
        for (int r = 0; r < kNumRings; ++r) {
            const auto i = static_cast<std::size_t>(r);
            CHECK(ab[i].mean == ba[i].mean);
            if (ab[i].mean) CHECK((*ab[i].mean >= 0.0 && *ab[i].mean <= 1.0));
        }
    }
}

TEST_CASE("jump examples") {
    const auto constant = series_of({{{"a", 2}, {"b", 4}}, {{"a", 2}, {"b", 4}}, {{"a", 2}, {"b", 4}}});
    for (const auto& ri : jump_index_per_ring(constant))
        if (ri.mean) CHECK(*ri.mean == 0.0);

    const auto one_three = series_of({{{"a", 1}}, {{"a", 3}}, {{"a", 3}}});
    const auto j = jump_index_per_ring(one_three);
    // a's rate is 1/2, attributed to ring 1 (pair 1) and ring 3 (pair 2)
    CHECK(*j[0].mean == doctest::Approx(0.5));
    CHECK(*j[2].mean == doctest::Approx(0.5));
    CHECK_FALSE(j[1].mean.has_value());

    const auto mixed = series_of({{{"a", 2}, {"b", 2}}, {{"a", 3}, {"b", 2}}});
    CHECK(*jump_index_per_ring(mixed)[1].mean == doctest::Approx(0.5));
}

TEST_CASE("jump ignores alters absent from one window of a pair") {
    const auto s = series_of({{{"a", 1}}, {{"b", 1}}, {{"a", 4}}});
    for (const auto& ri : jump_index_per_ring(s)) {
        CHECK(ri.samples == 0);
        CHECK_FALSE(ri.mean.has_value());
    }
}

TEST_CASE("magnitude weighting counts ring distance") {
    const auto s = series_of({{{"a", 1}}, {{"a", 4}}});
    CHECK(*jump_index_per_ring(s, kNumRings, JumpWeighting::Binary)[0].mean == 1.0);
    CHECK(*jump_index_per_ring(s, kNumRings, JumpWeighting::Magnitude)[0].mean == 3.0);
}

TEST_CASE("snapshot_rings: single active alter lands in ring 1") {
    std::vector<Interaction> xs;
    for (int i = 0; i < 20; ++i) xs.push_back(contact("a", day0() + days(10 * i)));
    const auto windows = make_windows(day0(), day0() + days(400));
    const auto s = snapshot_rings("ego", xs, windows);
    REQUIRE(s.ring_membership.size() == 2);
    CHECK(s.ring_membership[0] == std::map<UserId, int>{{"a", 1}});
}

TEST_CASE("snapshot_rings: windows without active ties are empty") {
    std::vector<Interaction> xs{contact("a", day0())};
    const auto windows = make_windows(day0(), day0() + days(800));
    const auto s = snapshot_rings("ego", xs, windows);
    CHECK(s.ring_membership.front().size() == 1);
    CHECK(s.ring_membership.back().empty());
}

TEST_CASE("snapshot_rings: well separated stationary ego keeps every ring") {
    // Three tiers far apart in rate; alters of a tier share contact times.
    std::vector<Interaction> xs;
    const Instant end = day0() + days(3 * 365);
    struct Tier {
        const char* prefix;
        int rate;
        int size;
    };
    for (const auto& [prefix, rate, size] : {Tier{"hi", 200, 4}, Tier{"mid", 20, 6}, Tier{"lo", 2, 10}}) {
        const Seconds gap = days(365) / rate;
        for (Instant t = day0(); t < end; t += gap)
            for (int k = 0; k < size; ++k) xs.push_back(contact(std::string(prefix) + std::to_string(k), t));
    }
    std::sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    const auto windows = make_windows(day0() + days(400), end);
    const auto s = snapshot_rings("ego", xs, windows);
    for (const auto& m : s.ring_membership) {
        CHECK(m.size() == 20);
        CHECK(m.at("hi0") == 1);
        CHECK(m.at("mid0") == 2);
        CHECK(m.at("lo0") == 3);
    }
    const auto rep = stability_report(s);
    CHECK(rep.window_pairs == windows.size() - 1);
    for (int r = 0; r < 3; ++r) {
        CHECK(*rep.jaccard[static_cast<std::size_t>(r)].mean == 1.0);
        CHECK(*rep.jump[static_cast<std::size_t>(r)].mean == 0.0);
    }
}
