#include "egonet/report.hpp"

#include <fmt/format.h>

#include <cmath>

#include "egonet/error.hpp"

namespace egonet {

UserSummaryRow summarize_user(const Timeline& tl, const UserAssessment& a) {
    UserSummaryRow r;
    r.user_id = tl.user_id;
    r.active_life_years = a.active_life_years;
    r.total_tweets = static_cast<double>(a.lifetime_tweet_count);
    r.observed_tweets = static_cast<double>(a.observed_tweet_count);
    r.tweets_per_day = a.daily_frequency;
    r.breakdown = social_breakdown(tl);
    return r;
}

const ColumnStats& SummaryTable::at(std::string_view name) const {
    for (const auto& c : columns) {
        if (c.name == name) return c;
    }
    throw ValidationError(fmt::format("summary has no column '{}'", name));
}

CsvTable SummaryTable::to_csv() const {
    std::vector<std::string> header{"statistic"};
    std::vector<std::string> mean{"mean"}, sd{"sd_population"};
    for (const auto& c : columns) {
        header.push_back(c.name);
        mean.push_back(format_number(c.mean));
        sd.push_back(format_number(c.sd));
    }
    CsvTable t(std::move(header));
    t.add_row(std::move(mean));
    t.add_row(std::move(sd));
    return t;
}

SummaryTable summary_table(std::span<const UserSummaryRow> rows) {
    if (rows.empty()) throw ValidationError("summary table needs a non-empty population");
    struct Column {
        const char* name;
        double (*get)(const UserSummaryRow&);
    };
    static constexpr Column kColumns[] = {
        {"active_life_years", [](const UserSummaryRow& r) { return r.active_life_years; }},
        {"total_tweets", [](const UserSummaryRow& r) { return r.total_tweets; }},
        {"observed_tweets", [](const UserSummaryRow& r) { return r.observed_tweets; }},
        {"tweets_per_day", [](const UserSummaryRow& r) { return r.tweets_per_day; }},
        {"pct_social", [](const UserSummaryRow& r) { return r.breakdown.pct_social; }},
        {"pct_replies", [](const UserSummaryRow& r) { return r.breakdown.pct_replies; }},
        {"pct_retweets", [](const UserSummaryRow& r) { return r.breakdown.pct_retweets; }},
        {"pct_mentions", [](const UserSummaryRow& r) { return r.breakdown.pct_mentions; }},
    };
    SummaryTable t;
    t.users = rows.size();
    const double n = static_cast<double>(rows.size());
    for (const auto& col : kColumns) {
        // Shifted by the first value so a constant column gives sd exactly 0.
        const double origin = col.get(rows.front());
        double sum = 0.0;
        for (const auto& r : rows) sum += col.get(r) - origin;
        const double mean = origin + sum / n;
        double ss = 0.0;
        for (const auto& r : rows) ss += (col.get(r) - mean) * (col.get(r) - mean);
        t.columns.push_back({col.name, mean, std::sqrt(ss / n)});
    }
    return t;
}

CsvTable user_breakdown_csv(std::span<const UserSummaryRow> rows) {
    CsvTable t({"user_id", "active_life_years", "total_tweets", "observed_tweets", "tweets_per_day", "pct_social",
                "pct_replies", "pct_retweets", "pct_mentions", "social_share_replies", "social_share_retweets",
                "social_share_mentions", "dominant_kind"});
    for (const auto& r : rows) {
        const auto& b = r.breakdown;
        t.add_row({r.user_id, format_number(r.active_life_years), format_number(r.total_tweets),
                   format_number(r.observed_tweets), format_number(r.tweets_per_day), format_number(b.pct_social),
                   format_number(b.pct_replies), format_number(b.pct_retweets), format_number(b.pct_mentions),
                   format_number(b.share_of_social(TweetKind::Reply)),
                   format_number(b.share_of_social(TweetKind::Retweet)),
                   format_number(b.share_of_social(TweetKind::Mention)), std::string(to_string(b.dominant_kind))});
    }
    return t;
}

}  // namespace egonet
