#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "egonet/model.hpp"

namespace egonet {

/// Half-open UTC interval [start, end).
struct Window {
    Instant start;
    Instant end;

    bool contains(Instant t) const { return start <= t && t < end; }
    Seconds length() const { return end - start; }
    friend bool operator==(const Window&, const Window&) = default;
};

inline constexpr Seconds kMinTieDuration{30 * kSecondsPerDay};
inline constexpr double kActiveTieThreshold = 1.0;  // contacts per year, inclusive

struct TieStats {
    std::size_t interaction_count = 0;
    Instant first_contact;
    Instant last_contact;
    double frequency_per_year = 0.0;
    std::size_t hashtag_total = 0;
    bool activated_by_hashtag = false;

    double hashtag_intensity() const {
        return interaction_count ? static_cast<double>(hashtag_total) / static_cast<double>(interaction_count) : 0.0;
    }
    friend bool operator==(const TieStats&, const TieStats&) = default;
};

struct EgoNetwork {
    UserId ego_id;
    Window window;
    std::map<UserId, TieStats> ties;

    friend bool operator==(const EgoNetwork&, const EgoNetwork&) = default;
};

/// Interactions per year since the first in-window contact, with the elapsed
/// time floored at 30 days.
double tie_frequency(std::size_t interactions, Instant first_contact, Instant window_end);

/// Aggregates the interactions that fall in `window` per alter. Activation by
/// hashtag looks at each alter's first interaction anywhere in `interactions`,
/// so pre-window history counts.
EgoNetwork build_ego_network(const UserId& ego_id, std::span<const Interaction> interactions, Window window);

/// Keeps ties with frequency_per_year >= 1.
EgoNetwork active_network(const EgoNetwork& net);

inline constexpr double kDefaultBandwidthQuantile = 0.3;

struct LayerStructure {
    UserId ego_id;
    std::size_t num_circles = 0;
    std::map<UserId, int> ring_of;             // 1 = innermost
    std::vector<std::size_t> ring_sizes;       // per ring
    std::vector<std::size_t> circle_sizes;     // cumulative
    std::vector<double> ring_mean_frequency;   // per ring, contacts/year
    std::vector<double> scaling_ratios;
    double bandwidth = 0.0;                    // in ln(contacts/year)
    bool degenerate = false;                   // fewer than 2 ties
};

/// Mean shift over ln(frequency) of all ties of an active network.
/// Bandwidth is the `bandwidth_quantile` quantile of pairwise log gaps.
LayerStructure detect_circles(const EgoNetwork& active, double bandwidth_quantile = kDefaultBandwidthQuantile);

/// circle_sizes[k+1] / circle_sizes[k]; empty for fewer than two circles.
std::vector<double> scaling_ratios(const LayerStructure& ls);

}  // namespace egonet
