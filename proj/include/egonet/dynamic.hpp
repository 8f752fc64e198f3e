#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "egonet/static_net.hpp"

namespace egonet {

inline constexpr int kNumRings = 5;

/// How clusters map to ring indices when a window does not yield exactly five.
enum class RingAlignment {
    Inner,  // clusters fill rings 1..c from the inside; extra clusters fold into ring 5
    Outer,  // the outermost cluster is always ring 5; extra inner clusters fold into ring 1
};

enum class JumpWeighting {
    Binary,     // 1 per ring change
    Magnitude,  // |ring change|
};

/// Windows of `width` starting at first, first+step, ... while start+width <= last.
std::vector<Window> make_windows(Instant first, Instant last, Seconds width = days(365), Seconds step = days(30));

struct SnapshotSeries {
    UserId ego_id;
    std::vector<Window> windows;
    std::vector<std::map<UserId, int>> ring_membership;  // one per window
};

/// Maps ranked cluster indices (1 = innermost, of `clusters` total) to ring 1..kNumRings.
int align_ring(int cluster_rank, std::size_t clusters, RingAlignment alignment);

SnapshotSeries snapshot_rings(const UserId& ego_id, std::span<const Interaction> interactions,
                              std::span<const Window> windows, double bandwidth_quantile = kDefaultBandwidthQuantile,
                              RingAlignment alignment = RingAlignment::Inner);

struct RingIndex {
    std::optional<double> mean;  // absent when no pair contributed
    std::size_t samples = 0;     // window pairs (Jaccard) or alters (jump)
};

/// Mean consecutive-window Jaccard per ring; pairs with empty union are skipped.
std::vector<RingIndex> jaccard_per_ring(const SnapshotSeries& series, int rings = kNumRings);

/// Per alter: jumps over the consecutive pairs where it is present in both
/// windows, divided by the number of such pairs. Per ring: mean over the
/// alters occupying that ring in the earlier window of some pair.
std::vector<RingIndex> jump_index_per_ring(const SnapshotSeries& series, int rings = kNumRings,
                                           JumpWeighting weighting = JumpWeighting::Binary);

struct StabilityReport {
    UserId ego_id;
    std::vector<RingIndex> jaccard;
    std::vector<RingIndex> jump;
    std::size_t window_pairs = 0;
};

StabilityReport stability_report(const SnapshotSeries& series, JumpWeighting weighting = JumpWeighting::Binary);

}  // namespace egonet
