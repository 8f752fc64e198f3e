#include "egonet/filtering.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "egonet/error.hpp"

namespace egonet {

namespace {

using std::chrono::sys_days;
using std::chrono::year_month_day;

sys_days date_of(Instant t) { return std::chrono::floor<std::chrono::days>(t); }

year_month_day add_one_month(year_month_day ymd) {
    auto next = ymd + std::chrono::months{1};
    if (!next.ok()) next = next.year() / next.month() / std::chrono::last;
    return next;
}

}  // namespace

std::string_view to_string(Observability v) { return v == Observability::Full ? "full" : "partial"; }

std::string_view to_string(Abandonment v) {
    switch (v) {
        case Abandonment::Active: return "active";
        case Abandonment::Abandoned: return "abandoned";
        case Abandonment::Undetermined: return "undetermined";
    }
    return "undetermined";
}

std::string_view to_string(Regularity v) {
    switch (v) {
        case Regularity::Regular: return "regular";
        case Regularity::Sporadic: return "sporadic";
        case Regularity::Undetermined: return "undetermined";
    }
    return "undetermined";
}

ObservabilityVerdict assess_observability(const Timeline& tl, std::size_t lifetime_tweet_count, std::size_t cap) {
    const std::size_t observed = tl.size();
    if (lifetime_tweet_count < observed)
        throw ValidationError(fmt::format("user {}: lifetime tweet count {} below observed count {}", tl.user_id,
                                          lifetime_tweet_count, observed));
    ObservabilityVerdict v;
    v.observability =
        (observed == cap && lifetime_tweet_count > cap) ? Observability::Partial : Observability::Full;
    v.coverage_ratio = lifetime_tweet_count == 0
                           ? 1.0
                           : static_cast<double>(observed) / static_cast<double>(lifetime_tweet_count);
    return v;
}

IntertweetStats intertweet_stats(const Timeline& tl) {
    if (tl.size() < 2)
        throw ClassificationError(
            fmt::format("user {}: {} tweet(s), intertweet time needs at least 2", tl.user_id, tl.size()));
    IntertweetStats s;
    for (std::size_t i = 1; i < tl.size(); ++i) {
        s.max_itt = std::max(s.max_itt, tl.tweets[i].timestamp - tl.tweets[i - 1].timestamp);
    }
    s.inactive_life = tl.download_time - tl.last_tweet();
    return s;
}

Abandonment classify_abandonment(const Timeline& tl) {
    const auto s = intertweet_stats(tl);
    return s.inactive_life >= s.max_itt + kAbandonmentGrace ? Abandonment::Abandoned : Abandonment::Active;
}

std::vector<MonthActivity> monthly_activity(const Timeline& tl) {
    std::vector<MonthActivity> months;
    if (tl.empty()) return months;
    const sys_days first = date_of(tl.first_tweet());
    const sys_days last = date_of(tl.last_tweet());

    year_month_day cursor{first};
    cursor = cursor.year() / cursor.month() / 1;
    while (sys_days{cursor} <= last) {
        const sys_days month_begin{cursor};
        const sys_days month_end{cursor.year() / cursor.month() / std::chrono::last};
        const sys_days lo = std::max(month_begin, first);
        const sys_days hi = std::min(month_end, last);
        MonthActivity m;
        m.year = static_cast<int>(cursor.year());
        m.month = static_cast<unsigned>(cursor.month());
        m.covered_days = static_cast<int>((hi - lo).count()) + 1;
        months.push_back(m);
        cursor = cursor + std::chrono::months{1};
    }
    std::size_t idx = 0;
    for (const auto& t : tl.tweets) {
        const year_month_day d{date_of(t.timestamp)};
        while (months[idx].year != static_cast<int>(d.year()) || months[idx].month != static_cast<unsigned>(d.month()))
            ++idx;
        ++months[idx].tweets;
    }
    return months;
}

Regularity classify_regularity(const Timeline& tl) {
    if (tl.empty()) throw ClassificationError(fmt::format("user {}: no tweets", tl.user_id));
    const year_month_day first{date_of(tl.first_tweet())};
    if (date_of(tl.last_tweet()) < sys_days{add_one_month(first)})
        throw ClassificationError(fmt::format("user {}: observed span shorter than one calendar month", tl.user_id));

    const auto months = monthly_activity(tl);
    const auto passing = static_cast<std::size_t>(
        std::count_if(months.begin(), months.end(), [](const MonthActivity& m) { return m.passes(); }));
    return 2 * passing >= months.size() ? Regularity::Regular : Regularity::Sporadic;
}

std::vector<double> mean_normalize(std::span<const double> series) {
    std::vector<double> out(series.size(), 0.0);
    if (series.empty()) return out;
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) return out;
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - mean) / range;
    return out;
}

std::vector<StationarityPoint> stationarity_profile(std::span<const Timeline> timelines, int horizon_weeks) {
    if (horizon_weeks <= 0) throw ValidationError("stationarity horizon must be positive");
    std::vector<double> sum(static_cast<std::size_t>(horizon_weeks), 0.0);
    std::vector<std::size_t> users(static_cast<std::size_t>(horizon_weeks), 0);
    std::size_t contributing = 0;

    const Seconds week = days(7);
    for (const auto& tl : timelines) {
        if (tl.empty()) continue;
        const Instant origin = tl.first_tweet();
        const auto last_week = static_cast<int>((tl.last_tweet() - origin) / week);
        const int covered = std::min(last_week + 1, horizon_weeks);
        std::vector<double> counts(static_cast<std::size_t>(covered), 0.0);
        for (const auto& t : tl.tweets) {
            const auto w = static_cast<int>((t.timestamp - origin) / week);
            if (w >= covered) break;
            counts[static_cast<std::size_t>(w)] += 1.0;
        }
        const auto norm = mean_normalize(counts);
        for (std::size_t w = 0; w < norm.size(); ++w) {
            sum[w] += norm[w];
            ++users[w];
        }
        ++contributing;
    }
    if (contributing == 0) throw ValidationError("stationarity profile needs at least one fully observed user");

    std::vector<StationarityPoint> profile;
    for (int w = 0; w < horizon_weeks; ++w) {
        const auto i = static_cast<std::size_t>(w);
        if (users[i] == 0) continue;
        profile.push_back({w, sum[i] / static_cast<double>(users[i]), users[i]});
    }
    return profile;
}

std::set<UserId> detect_frequency_outliers(const std::map<UserId, double>& frequencies, double eps,
                                           std::size_t min_pts) {
    if (!(eps > 0.0)) throw ValidationError("DBSCAN eps must be positive");
    if (min_pts == 0) throw ValidationError("DBSCAN min_pts must be positive");
    if (frequencies.size() < min_pts)
        throw ValidationError(
            fmt::format("DBSCAN needs at least min_pts={} users, got {}", min_pts, frequencies.size()));

    std::vector<std::pair<double, const UserId*>> pts;
    pts.reserve(frequencies.size());
    for (const auto& [user, f] : frequencies) {
        if (!std::isfinite(f)) throw ValidationError(fmt::format("user {}: non-finite frequency", user));
        pts.emplace_back(f, &user);
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    // In 1-D the eps-neighbourhood of a sorted point is a contiguous index range.
    const std::size_t n = pts.size();
    std::vector<std::size_t> lo(n), hi(n);
    std::vector<bool> core(n);
    std::size_t l = 0, h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (pts[i].first - pts[l].first > eps) ++l;
        if (h < i) h = i;
        while (h + 1 < n && pts[h + 1].first - pts[i].first <= eps) ++h;
        lo[i] = l;
        hi[i] = h;
        core[i] = (h - l + 1) >= min_pts;
    }
    std::vector<std::size_t> core_prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) core_prefix[i + 1] = core_prefix[i] + (core[i] ? 1 : 0);

    std::set<UserId> noise;
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) continue;
        const bool reachable = core_prefix[hi[i] + 1] - core_prefix[lo[i]] > 0;
        if (!reachable) noise.insert(*pts[i].second);
    }
    return noise;
}

UserAssessment assess_user(const Timeline& tl, std::size_t lifetime_tweet_count, std::size_t cap) {
    UserAssessment a;
    a.user_id = tl.user_id;
    const auto obs = assess_observability(tl, lifetime_tweet_count, cap);
    a.observability = obs.observability;
    a.coverage_ratio = obs.coverage_ratio;
    a.active_life_years = to_years(tl.download_time - tl.account_created);
    a.observed_tweet_count = tl.size();
    a.lifetime_tweet_count = lifetime_tweet_count;
    if (tl.empty()) return a;

    const Seconds span = tl.last_tweet() - tl.first_tweet();
    a.observed_span_days = to_days(span);
    a.daily_frequency = span.count() > 0 ? static_cast<double>(tl.size()) / a.observed_span_days
                                         : static_cast<double>(tl.size());
    try {
        a.abandonment = classify_abandonment(tl);
    } catch (const ClassificationError& e) {
        spdlog::debug("{}", e.what());
    }
    try {
        a.regularity = classify_regularity(tl);
    } catch (const ClassificationError& e) {
        spdlog::debug("{}", e.what());
    }
    return a;
}

std::vector<UserAssessment> assess_population(std::span<const Timeline> timelines,
                                              std::span<const std::size_t> lifetime_counts, std::size_t cap,
                                              double eps, std::size_t min_pts) {
    if (timelines.size() != lifetime_counts.size())
        throw ValidationError("one lifetime tweet count is required per timeline");
    std::vector<UserAssessment> out;
    out.reserve(timelines.size());
    std::map<UserId, double> freq;
    for (std::size_t i = 0; i < timelines.size(); ++i) {
        out.push_back(assess_user(timelines[i], lifetime_counts[i], cap));
        if (!timelines[i].empty()) freq[out.back().user_id] = out.back().daily_frequency;
    }
    if (freq.size() < min_pts) {
        spdlog::warn("{} users with tweets is below DBSCAN min_pts={}; no outliers flagged", freq.size(), min_pts);
        return out;
    }
    const auto outliers = detect_frequency_outliers(freq, eps, min_pts);
    for (auto& a : out) a.is_outlier = outliers.count(a.user_id) > 0;
    return out;
}

std::set<UserId> select_study_population(std::span<const UserAssessment> assessments, StudyPurpose purpose) {
    const double min_span = purpose == StudyPurpose::Static ? 365.0 : 730.0;
    std::set<UserId> out;
    for (const auto& a : assessments) {
        if (a.abandonment != Abandonment::Active) continue;
        if (a.regularity != Regularity::Regular) continue;
        if (a.is_outlier) continue;
        if (a.observed_span_days < min_span) continue;
        out.insert(a.user_id);
    }
    return out;
}

}  // namespace egonet
