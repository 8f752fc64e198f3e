#include "egonet/dynamic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <set>

#include "egonet/error.hpp"

namespace egonet {

std::vector<Window> make_windows(Instant first, Instant last, Seconds width, Seconds step) {
    if (width.count() <= 0 || step.count() <= 0) throw ValidationError("window width and step must be positive");
    std::vector<Window> out;
    for (Instant start = first; start + width <= last; start += step) out.push_back({start, start + width});
    return out;
}

int align_ring(int cluster_rank, std::size_t clusters, RingAlignment alignment) {
    const int c = static_cast<int>(clusters);
    if (alignment == RingAlignment::Inner) return std::min(cluster_rank, kNumRings);
    // Outer: count from the outside; surplus inner clusters collapse into ring 1.
    const int from_outside = c - cluster_rank;  // 0 for the outermost cluster
    return std::max(1, kNumRings - from_outside);
}

SnapshotSeries snapshot_rings(const UserId& ego_id, std::span<const Interaction> interactions,
                              std::span<const Window> windows, double bandwidth_quantile, RingAlignment alignment) {
    SnapshotSeries series{ego_id, {windows.begin(), windows.end()}, {}};
    series.ring_membership.reserve(windows.size());
    for (const auto& w : windows) {
        const auto active = active_network(build_ego_network(ego_id, interactions, w));
        std::map<UserId, int> rings;
        if (!active.ties.empty()) {
            const auto ls = detect_circles(active, bandwidth_quantile);
            for (const auto& [alter, rank] : ls.ring_of) rings.emplace(alter, align_ring(rank, ls.num_circles, alignment));
        }
        series.ring_membership.push_back(std::move(rings));
    }
    return series;
}

namespace {

void require_pairs(const SnapshotSeries& s, int rings) {
    if (s.ring_membership.size() < 2)
        throw ValidationError(fmt::format("ego {}: stability needs at least 2 windows, got {}", s.ego_id,
                                          s.ring_membership.size()));
    if (rings < 1) throw ValidationError("ring count must be positive");
}

}  // namespace

std::vector<RingIndex> jaccard_per_ring(const SnapshotSeries& series, int rings) {
    require_pairs(series, rings);
    std::vector<double> sum(static_cast<std::size_t>(rings), 0.0);
    std::vector<std::size_t> pairs(static_cast<std::size_t>(rings), 0);
    for (std::size_t t = 0; t + 1 < series.ring_membership.size(); ++t) {
        const auto& a = series.ring_membership[t];
        const auto& b = series.ring_membership[t + 1];
        std::vector<std::size_t> inter(static_cast<std::size_t>(rings), 0), uni(static_cast<std::size_t>(rings), 0);
        for (const auto& [alter, r] : a) {
            if (r < 1 || r > rings) continue;
            ++uni[static_cast<std::size_t>(r - 1)];
            const auto it = b.find(alter);
            if (it != b.end() && it->second == r) ++inter[static_cast<std::size_t>(r - 1)];
        }
        for (const auto& [alter, r] : b) {
            if (r < 1 || r > rings) continue;
            const auto it = a.find(alter);
            if (it == a.end() || it->second != r) ++uni[static_cast<std::size_t>(r - 1)];
        }
        for (std::size_t r = 0; r < static_cast<std::size_t>(rings); ++r) {
            if (uni[r] == 0) continue;
            sum[r] += static_cast<double>(inter[r]) / static_cast<double>(uni[r]);
            ++pairs[r];
        }
    }
    std::vector<RingIndex> out(static_cast<std::size_t>(rings));
    for (std::size_t r = 0; r < out.size(); ++r) {
        out[r].samples = pairs[r];
        if (pairs[r]) out[r].mean = sum[r] / static_cast<double>(pairs[r]);
    }
    return out;
}

std::vector<RingIndex> jump_index_per_ring(const SnapshotSeries& series, int rings, JumpWeighting weighting) {
    require_pairs(series, rings);
    struct AlterJumps {
        double jumps = 0.0;
        std::size_t pairs = 0;
        std::set<int> rings_before;
    };
    std::map<UserId, AlterJumps> per_alter;
    for (std::size_t t = 0; t + 1 < series.ring_membership.size(); ++t) {
        const auto& a = series.ring_membership[t];
        const auto& b = series.ring_membership[t + 1];
        for (const auto& [alter, r] : a) {
            const auto it = b.find(alter);
            if (it == b.end()) continue;
            auto& aj = per_alter[alter];
            const int delta = std::abs(it->second - r);
            aj.jumps += weighting == JumpWeighting::Binary ? (delta != 0 ? 1.0 : 0.0) : static_cast<double>(delta);
            ++aj.pairs;
            aj.rings_before.insert(r);
        }
    }
    std::vector<double> sum(static_cast<std::size_t>(rings), 0.0);
    std::vector<std::size_t> alters(static_cast<std::size_t>(rings), 0);
    for (const auto& [alter, aj] : per_alter) {
        const double rate = aj.jumps / static_cast<double>(aj.pairs);
        for (int r : aj.rings_before) {
            if (r < 1 || r > rings) continue;
            sum[static_cast<std::size_t>(r - 1)] += rate;
            ++alters[static_cast<std::size_t>(r - 1)];
        }
    }
    std::vector<RingIndex> out(static_cast<std::size_t>(rings));
    for (std::size_t r = 0; r < out.size(); ++r) {
        out[r].samples = alters[r];
        if (alters[r]) out[r].mean = sum[r] / static_cast<double>(alters[r]);
    }
    return out;
}

StabilityReport stability_report(const SnapshotSeries& series, JumpWeighting weighting) {
    StabilityReport rep;
    rep.ego_id = series.ego_id;
    rep.jaccard = jaccard_per_ring(series);
    rep.jump = jump_index_per_ring(series, kNumRings, weighting);
    rep.window_pairs = series.ring_membership.size() - 1;
    return rep;
}

}  // namespace egonet
