#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "egonet/corpus.hpp"
#include "egonet/csv.hpp"
#include "egonet/filtering.hpp"

namespace egonet {

/// One user's row of the dataset summary.
struct UserSummaryRow {
    UserId user_id;
    double active_life_years = 0.0;
    double total_tweets = 0.0;
    double observed_tweets = 0.0;
    double tweets_per_day = 0.0;
    SocialBreakdown breakdown;
};

UserSummaryRow summarize_user(const Timeline& tl, const UserAssessment& a);

struct ColumnStats {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;  // population sd
};

struct SummaryTable {
    std::size_t users = 0;
    std::vector<ColumnStats> columns;

    const ColumnStats& at(std::string_view name) const;
    /// Rows `mean` and `sd_population`, one column per statistic.
    CsvTable to_csv() const;
};

/// Column-wise mean and population sd. Throws ValidationError on an empty population.
SummaryTable summary_table(std::span<const UserSummaryRow> rows);

/// Per-user breakdown, ready for histograms of tweets/day and kind shares.
CsvTable user_breakdown_csv(std::span<const UserSummaryRow> rows);

}  // namespace egonet
