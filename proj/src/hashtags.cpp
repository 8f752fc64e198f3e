#include "egonet/hashtags.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

#include "egonet/error.hpp"

namespace egonet {

bool activation_by_hashtag(std::span<const Interaction> tie) {
    if (tie.empty()) throw ValidationError("activation needs at least one interaction");
    const auto first = std::min_element(tie.begin(), tie.end(), [](const Interaction& a, const Interaction& b) {
        return std::tie(a.timestamp, a.tweet_id) < std::tie(b.timestamp, b.tweet_id);
    });
    return first->hashtag_count >= 1;
}

SampleSummary summarize(std::span<const double> xs) {
    SampleSummary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n));
    return s;
}

namespace {

std::size_t ring_slot(int ring) { return static_cast<std::size_t>(std::clamp(ring, 1, kNumRings) - 1); }

std::vector<RingSplit> split_by_activation(std::span<const EgoLayers> egos,
                                           const std::function<double(const TieStats&)>& value) {
    std::vector<std::vector<double>> act(kNumRings), plain(kNumRings);
    for (const auto& e : egos) {
        for (const auto& [alter, ring] : e.layers.ring_of) {
            const auto& tie = e.active.ties.at(alter);
            (tie.activated_by_hashtag ? act : plain)[ring_slot(ring)].push_back(value(tie));
        }
    }
    std::vector<RingSplit> out;
    for (int r = 1; r <= kNumRings; ++r) {
        const auto i = static_cast<std::size_t>(r - 1);
        out.push_back({r, summarize(act[i]), summarize(plain[i])});
    }
    return out;
}

}  // namespace

HashtagStats activation_stats(std::span<const EgoLayers> egos) {
    HashtagStats stats;
    std::vector<std::vector<double>> ring_pcts(kNumRings);
    for (const auto& e : egos) {
        if (e.active.ties.empty()) continue;
        EgoActivation ea{e.active.ego_id, e.active.ties.size(), 0, 0.0};
        for (const auto& [alter, tie] : e.active.ties) ea.activated += tie.activated_by_hashtag ? 1 : 0;
        ea.activation_pct = 100.0 * static_cast<double>(ea.activated) / static_cast<double>(ea.active_alters);
        stats.per_ego.push_back(ea);

        std::vector<std::size_t> members(kNumRings, 0), activated(kNumRings, 0);
        for (const auto& [alter, ring] : e.layers.ring_of) {
            const auto i = ring_slot(ring);
            ++members[i];
            if (e.active.ties.at(alter).activated_by_hashtag) ++activated[i];
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i] == 0) continue;
            ring_pcts[i].push_back(100.0 * static_cast<double>(activated[i]) / static_cast<double>(members[i]));
        }
    }
    for (int r = 1; r <= kNumRings; ++r) {
        const auto& xs = ring_pcts[static_cast<std::size_t>(r - 1)];
        RingActivation ra;
        ra.ring = r;
        ra.egos = xs.size();
        if (!xs.empty()) {
            const auto s = summarize(xs);
            ra.mean_pct = s.mean;
            if (xs.size() >= 2) {
                // Sample sd for the standard error of the mean.
                const double sample_sd = s.sd * std::sqrt(static_cast<double>(s.n) / static_cast<double>(s.n - 1));
                ra.ci95 = 1.96 * sample_sd / std::sqrt(static_cast<double>(s.n));
            }
        }
        stats.per_ring.push_back(ra);
    }
    return stats;
}

std::vector<RingSplit> frequency_by_activation(std::span<const EgoLayers> egos) {
    return split_by_activation(egos, [](const TieStats& t) { return t.frequency_per_year; });
}

std::vector<RingSplit> hashtag_intensity(std::span<const EgoLayers> egos) {
    return split_by_activation(egos, [](const TieStats& t) { return t.hashtag_intensity(); });
}

std::vector<RingSplit> hashtag_totals(std::span<const EgoLayers> egos) {
    return split_by_activation(egos, [](const TieStats& t) { return static_cast<double>(t.hashtag_total); });
}

}  // namespace egonet
