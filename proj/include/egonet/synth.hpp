#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "egonet/model.hpp"

namespace egonet {

/// Parameters of a planted ego network. Defaults follow the 1.5/5/15/50/150
/// layer model with geometric (ratio 3) contact rates.
struct SynthConfig {
    std::array<int, 5> ring_sizes{2, 3, 10, 35, 100};
    std::array<double, 5> ring_rates{81.0, 27.0, 9.0, 3.0, 1.2};  // contacts/year per alter
    double duration_years = 3.0;
    double hashtag_prob_activated = 0.4;
    double hashtag_prob_plain = 0.2;
    double activation_prob = 0.36;
    int noise_alters = 10;
    double noise_rate = 0.25;          // contacts/year, below the active threshold
    double indirect_per_year = 260.0;  // plain tweets
    std::array<double, 3> kind_weights{0.54, 0.22, 0.24};  // retweet, reply, mention
    double inactive_tail_days = 1.0;   // last planted activity -> download time
    bool reshuffle_rates_yearly = false;
    Instant start = Instant{std::chrono::sys_days{std::chrono::year{2015} / 1 / 1}};
    std::uint64_t seed = 1;

    /// Throws ValidationError when the invariants do not hold.
    void validate() const;
    int structured_alters() const;
};

struct PlantedAlter {
    UserId alter_id;
    int ring = 0;  // 1..5, 0 for sub-threshold noise alters
    double rate = 0.0;
    bool activated = false;
    std::size_t contacts = 0;  // Poisson draws can leave a planted alter silent
};

struct GroundTruth {
    UserId ego_id;
    std::vector<PlantedAlter> alters;
};

struct SynthEgo {
    Timeline timeline;
    GroundTruth truth;
};

/// Deterministic for a fixed (cfg, ego_id).
SynthEgo generate_ego(const SynthConfig& cfg, const UserId& ego_id);

UserId synth_ego_id(std::size_t index);

/// Writes `<ego>.jsonl` per ego plus `profiles.csv` and `truth.csv` into `dir`.
/// Ego i uses seed cfg.seed + i.
void generate_population(const SynthConfig& cfg, std::size_t n_egos, const std::filesystem::path& dir,
                         unsigned threads = 1);

}  // namespace egonet
