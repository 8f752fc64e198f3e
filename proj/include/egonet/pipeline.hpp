#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "egonet/corpus.hpp"
#include "egonet/csv.hpp"
#include "egonet/dynamic.hpp"
#include "egonet/filtering.hpp"
#include "egonet/hashtags.hpp"
#include "egonet/static_net.hpp"

namespace egonet {

inline constexpr const char* kToolVersion = "0.3.0";

/// Every knob that changes any output of the pipeline.
struct PipelineParams {
    std::size_t cap = kApiTweetCap;
    double eps = 3.0;
    std::size_t min_pts = 5;
    double bandwidth_quantile = kDefaultBandwidthQuantile;
    int width_days = 365;
    int step_days = 30;
    RingAlignment alignment = RingAlignment::Inner;
    JumpWeighting jump = JumpWeighting::Binary;
    int stationarity_weeks = 84;
};

// classify-users

std::vector<UserAssessment> classify_users(std::span<const CorpusEntry> corpus, const PipelineParams& params);
CsvTable assessments_csv(std::span<const UserAssessment> assessments);
std::vector<UserAssessment> read_assessments(const std::filesystem::path& path);

// static

/// Observation window of a timeline: [first tweet, last tweet + 1 s).
Window observed_window(const Timeline& tl);

struct StaticEgo {
    UserId ego_id;
    EgoNetwork total;
    EgoNetwork active;
    std::optional<LayerStructure> layers;  // absent when the active network is empty
};

StaticEgo analyze_static(const Timeline& tl, double bandwidth_quantile);

std::vector<StaticEgo> run_static(std::span<const CorpusEntry> corpus, const std::set<UserId>& population,
                                  const PipelineParams& params, unsigned threads);

/// layers.csv, ratios.csv, total_size.csv, active_size.csv, rings.csv
void write_static(const std::filesystem::path& dir, std::span<const StaticEgo> egos);

/// ego -> alter -> ring from rings.csv
std::map<UserId, std::map<UserId, int>> read_ring_assignments(const std::filesystem::path& static_dir);

// dynamic

std::vector<StabilityReport> run_dynamic(std::span<const CorpusEntry> corpus, const std::set<UserId>& population,
                                         const PipelineParams& params, unsigned threads,
                                         std::vector<SnapshotSeries>* series_out = nullptr);
CsvTable stability_csv(std::span<const StabilityReport> reports);
CsvTable trajectories_csv(std::span<const SnapshotSeries> series);

// hashtags

struct HashtagReport {
    HashtagStats activation;
    std::vector<RingSplit> frequency;
    std::vector<RingSplit> intensity;
    std::vector<RingSplit> totals;
};

std::vector<EgoLayers> ego_layers(std::span<const StaticEgo> egos);
HashtagReport run_hashtags(std::span<const EgoLayers> egos);
CsvTable hashtag_ring_csv(const HashtagReport& r);
CsvTable hashtag_ego_csv(const HashtagReport& r);

/// Rebuilds ego layers from archives plus ring assignments written by the static stage.
std::vector<EgoLayers> ego_layers_from_static(std::span<const CorpusEntry> corpus,
                                              const std::map<UserId, std::map<UserId, int>>& rings);

// report

/// Writes summary.csv, users.csv, top_activity.csv and stationarity.csv.
/// Returns the number of users summarized.
std::size_t write_report(const std::filesystem::path& dir, std::span<const CorpusEntry> corpus,
                         std::span<const UserAssessment> assessments, const PipelineParams& params);

// run-all

struct PipelineConfig {
    std::filesystem::path input;
    std::filesystem::path output;
    PipelineParams params;
    unsigned threads = 1;
};

struct PipelineResult {
    bool ok = true;
    std::string failed_stage;
    std::string error;
};

/// classify -> static -> dynamic -> hashtags -> report, then manifest.json.
/// Never throws for stage failures: they are recorded in the manifest.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace egonet
