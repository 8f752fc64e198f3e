#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "egonet/model.hpp"
#include "egonet/time.hpp"

namespace egonet::testing {

inline Instant at(const std::string& iso) { return parse_iso8601(iso); }

inline Instant day0() { return at("2015-01-01T00:00:00Z"); }

inline TweetRecord tweet(const std::string& id, Instant ts, const UserId& author = "ego") {
    TweetRecord t;
    t.tweet_id = id;
    t.author_id = author;
    t.timestamp = ts;
    return t;
}

inline TweetRecord mention(const std::string& id, Instant ts, std::set<UserId> alters,
                           std::vector<std::string> tags = {}) {
    auto t = tweet(id, ts);
    t.mentioned_users = std::move(alters);
    t.hashtags = std::move(tags);
    return t;
}

/// Timeline of plain tweets, one per instant.
inline Timeline timeline_at(const std::vector<Instant>& stamps, Instant download) {
    Timeline tl;
    tl.user_id = "ego";
    tl.account_created = stamps.empty() ? download : std::min(stamps.front(), download);
    tl.download_time = download;
    int i = 0;
    for (auto s : stamps) tl.tweets.push_back(tweet(std::to_string(1000000 + i++), s));
    return tl;
}

inline Interaction contact(const UserId& alter, Instant ts, int tags = 0, const std::string& id = "") {
    Interaction x;
    x.alter_id = alter;
    x.timestamp = ts;
    x.tweet_id = id.empty() ? std::to_string(unix_seconds(ts)) + alter : id;
    x.hashtag_count = tags;
    x.source_kind = TweetKind::Mention;
    return x;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("egonet_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace egonet::testing
