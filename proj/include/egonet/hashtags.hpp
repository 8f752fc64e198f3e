#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "egonet/dynamic.hpp"
#include "egonet/static_net.hpp"

namespace egonet {

/// True iff the chronologically first interaction (ties broken by tweet id)
/// carries at least one hashtag. Throws ValidationError on an empty tie.
bool activation_by_hashtag(std::span<const Interaction> tie);

/// An ego's active network together with its circles.
struct EgoLayers {
    EgoNetwork active;
    LayerStructure layers;
};

struct EgoActivation {
    UserId ego_id;
    std::size_t active_alters = 0;
    std::size_t activated = 0;
    double activation_pct = 0.0;
};

struct RingActivation {
    int ring = 0;
    std::size_t egos = 0;                // egos with a non-empty ring
    std::optional<double> mean_pct;      // absent when the ring is empty for every ego
    std::optional<double> ci95;          // normal approximation, needs >= 2 egos
};

struct HashtagStats {
    std::vector<EgoActivation> per_ego;
    std::vector<RingActivation> per_ring;
};

HashtagStats activation_stats(std::span<const EgoLayers> egos);

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  // population sd
};

SampleSummary summarize(std::span<const double> xs);

struct RingSplit {
    int ring = 0;
    SampleSummary activated;
    SampleSummary not_activated;
};

/// Contact frequency per ring, split by activation, pooled across egos.
std::vector<RingSplit> frequency_by_activation(std::span<const EgoLayers> egos);

/// Hashtags per interaction per alter, split by activation, pooled across egos.
std::vector<RingSplit> hashtag_intensity(std::span<const EgoLayers> egos);

/// Raw hashtag totals per alter, split the same way.
std::vector<RingSplit> hashtag_totals(std::span<const EgoLayers> egos);

}  // namespace egonet
