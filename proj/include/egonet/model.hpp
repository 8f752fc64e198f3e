#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "egonet/time.hpp"

namespace egonet {

using UserId = std::string;

/// One archived tweet with its explicit communication metadata.
struct TweetRecord {
    std::string tweet_id;
    UserId author_id;
    Instant timestamp;
    std::string text;
    std::optional<UserId> replied_to_user;
    std::optional<UserId> retweeted_user;  // quote tweets land here too
    std::set<UserId> mentioned_users;
    std::vector<std::string> hashtags;  // lowercase, duplicates kept

    friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

enum class TweetKind { Retweet, Reply, Mention, Indirect };

std::string_view to_string(TweetKind kind);

inline bool is_social(TweetKind kind) { return kind != TweetKind::Indirect; }

/// A user's observed stream, sorted by (timestamp, tweet_id).
struct Timeline {
    UserId user_id;
    Instant account_created;
    Instant download_time;
    std::vector<TweetRecord> tweets;

    bool empty() const { return tweets.empty(); }
    std::size_t size() const { return tweets.size(); }
    Instant first_tweet() const { return tweets.front().timestamp; }
    Instant last_tweet() const { return tweets.back().timestamp; }

    friend bool operator==(const Timeline&, const Timeline&) = default;
};

/// One outgoing ego -> alter contact derived from a social tweet.
struct Interaction {
    UserId alter_id;
    Instant timestamp;
    std::string tweet_id;
    int hashtag_count = 0;
    TweetKind source_kind = TweetKind::Mention;

    friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// Parses a line-delimited archive. Blank lines are skipped. Throws ParseError
/// for malformed lines and ValidationError for records that break Timeline
/// invariants (wrong author, out of range, duplicate id).
Timeline parse_timeline(std::istream& in, const UserId& user_id, Instant account_created,
                        Instant download_time);

/// Writes the timeline back in the archive format, one record per line.
void serialize_timeline(const Timeline& tl, std::ostream& out);
std::string serialize_timeline(const Timeline& tl);

/// Precedence Retweet > Reply > Mention > Indirect.
TweetKind classify_tweet(const TweetRecord& t);

struct SocialBreakdown {
    std::size_t tweets = 0;
    std::size_t retweets = 0;
    std::size_t replies = 0;
    std::size_t mentions = 0;
    std::size_t indirect = 0;
    // Percentages of all tweets; the three kinds sum to pct_social.
    double pct_social = 0.0;
    double pct_replies = 0.0;
    double pct_retweets = 0.0;
    double pct_mentions = 0.0;
    TweetKind dominant_kind = TweetKind::Indirect;

    // Same counts as shares of social tweets (0 when there are none).
    double share_of_social(TweetKind kind) const;
};

SocialBreakdown social_breakdown(const Timeline& tl);

/// One interaction per distinct alter referenced by each social tweet, in time order.
std::vector<Interaction> extract_interactions(const Timeline& tl);

}  // namespace egonet
