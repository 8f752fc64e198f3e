#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "egonet/model.hpp"

namespace egonet {

inline constexpr std::size_t kApiTweetCap = 3200;
/// Grace period added to the longest observed intertweet time: 182.5 days.
inline constexpr Seconds kAbandonmentGrace{182 * kSecondsPerDay + kSecondsPerDay / 2};

enum class Observability { Full, Partial };
enum class Abandonment { Active, Abandoned, Undetermined };
enum class Regularity { Regular, Sporadic, Undetermined };
enum class StudyPurpose { Static, Dynamic };

std::string_view to_string(Observability v);
std::string_view to_string(Abandonment v);
std::string_view to_string(Regularity v);

struct ObservabilityVerdict {
    Observability observability = Observability::Full;
    double coverage_ratio = 1.0;
};

/// Partial iff the observed count hit the cap and the lifetime count exceeds it.
ObservabilityVerdict assess_observability(const Timeline& tl, std::size_t lifetime_tweet_count,
                                          std::size_t cap = kApiTweetCap);

struct IntertweetStats {
    Seconds max_itt{0};
    Seconds inactive_life{0};  // last tweet -> download time

    double max_itt_days() const { return to_days(max_itt); }
    double inactive_life_days() const { return to_days(inactive_life); }
};

/// Requires >= 2 tweets.
IntertweetStats intertweet_stats(const Timeline& tl);

/// Abandoned iff inactive life >= max ITT + 182.5 days.
Abandonment classify_abandonment(const Timeline& tl);

/// Per covered calendar month (UTC): passes iff tweets / covered days >= 1/3.
/// Regular iff at least half of the covered months pass.
Regularity classify_regularity(const Timeline& tl);

struct MonthActivity {
    int year = 0;
    unsigned month = 0;
    std::size_t tweets = 0;
    int covered_days = 0;
    bool passes() const { return 3 * tweets >= static_cast<std::size_t>(covered_days); }
};

/// Calendar months between the first and last tweet, with per-month counts.
std::vector<MonthActivity> monthly_activity(const Timeline& tl);

/// (x - mean) / (max - min); a constant series maps to zeros.
std::vector<double> mean_normalize(std::span<const double> series);

struct StationarityPoint {
    int week = 0;
    double mean_normalized = 0.0;
    std::size_t users = 0;
};

/// Weekly tweet counts aligned on each user's first tweet, mean-normalized per
/// user, averaged across the users covering each week.
std::vector<StationarityPoint> stationarity_profile(std::span<const Timeline> timelines, int horizon_weeks = 84);

/// 1-D DBSCAN over daily frequencies; returns the noise points.
std::set<UserId> detect_frequency_outliers(const std::map<UserId, double>& frequencies, double eps = 3.0,
                                           std::size_t min_pts = 5);

struct UserAssessment {
    UserId user_id;
    Observability observability = Observability::Full;
    double coverage_ratio = 1.0;
    double active_life_years = 0.0;
    std::size_t observed_tweet_count = 0;
    std::size_t lifetime_tweet_count = 0;
    double daily_frequency = 0.0;
    Abandonment abandonment = Abandonment::Undetermined;
    Regularity regularity = Regularity::Undetermined;
    bool is_outlier = false;
    double observed_span_days = 0.0;
};

/// Everything except the outlier flag, which needs the whole population.
UserAssessment assess_user(const Timeline& tl, std::size_t lifetime_tweet_count, std::size_t cap = kApiTweetCap);

/// Runs assess_user over all timelines and flags DBSCAN outliers on tweets/day.
std::vector<UserAssessment> assess_population(std::span<const Timeline> timelines,
                                              std::span<const std::size_t> lifetime_counts,
                                              std::size_t cap, double eps, std::size_t min_pts);

std::set<UserId> select_study_population(std::span<const UserAssessment> assessments, StudyPurpose purpose);

}  // namespace egonet
