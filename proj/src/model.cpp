#include "egonet/model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "egonet/error.hpp"

namespace egonet {

namespace {

using json = nlohmann::json;

std::string lowercase_tag(std::string tag) {
    if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
    for (char& c : tag) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return tag;
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw ParseError(line, fmt::format("'{}' must be a string or null", key));
    auto v = it->get<std::string>();
    if (v.empty()) return std::nullopt;
    return v;
}

std::string required_string(const json& obj, const char* key, std::size_t line) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(line, fmt::format("missing key '{}'", key));
    if (!it->is_string()) throw ParseError(line, fmt::format("'{}' must be a string", key));
    return it->get<std::string>();
}

std::vector<std::string> string_array(const json& obj, const char* key, std::size_t line) {
    std::vector<std::string> out;
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return out;
    if (!it->is_array()) throw ParseError(line, fmt::format("'{}' must be an array", key));
    for (const auto& v : *it) {
        if (!v.is_string()) throw ParseError(line, fmt::format("'{}' entries must be strings", key));
        out.push_back(v.get<std::string>());
    }
    return out;
}

TweetRecord parse_record(const std::string& text, std::size_t line) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(line, e.what());
    }
    if (!obj.is_object()) throw ParseError(line, "record is not an object");

    TweetRecord t;
    t.tweet_id = required_string(obj, "id", line);
    if (t.tweet_id.empty()) throw ParseError(line, "empty tweet id");
    t.author_id = required_string(obj, "user_id", line);
    try {
        t.timestamp = parse_iso8601(required_string(obj, "created_at", line));
    } catch (const ValidationError& e) {
        throw ParseError(line, e.what());
    }
    if (const auto it = obj.find("text"); it != obj.end() && !it->is_null()) {
        if (!it->is_string()) throw ParseError(line, "'text' must be a string");
        t.text = it->get<std::string>();
    }
    t.replied_to_user = optional_string(obj, "reply_to", line);
    t.retweeted_user = optional_string(obj, "retweet_of", line);
    if (!t.retweeted_user) t.retweeted_user = optional_string(obj, "quote_of", line);
    for (auto& m : string_array(obj, "mentions", line)) {
        if (!m.empty()) t.mentioned_users.insert(std::move(m));
    }
    for (auto& h : string_array(obj, "hashtags", line)) {
        auto tag = lowercase_tag(std::move(h));
        if (!tag.empty()) t.hashtags.push_back(std::move(tag));
    }
    return t;
}

void strip_self_references(TweetRecord& t) {
    if (t.replied_to_user == t.author_id) t.replied_to_user.reset();
    if (t.retweeted_user == t.author_id) t.retweeted_user.reset();
    t.mentioned_users.erase(t.author_id);
}

json null_or(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view to_string(TweetKind kind) {
    switch (kind) {
        case TweetKind::Retweet: return "retweet";
        case TweetKind::Reply: return "reply";
        case TweetKind::Mention: return "mention";
        case TweetKind::Indirect: return "indirect";
    }
    return "indirect";
}

Timeline parse_timeline(std::istream& in, const UserId& user_id, Instant account_created,
                        Instant download_time) {
    if (download_time < account_created)
        throw ValidationError(fmt::format("user {}: download time precedes account creation", user_id));

    Timeline tl{user_id, account_created, download_time, {}};
    std::unordered_set<std::string> seen;
    std::string buf;
    std::size_t line = 0;
    while (std::getline(in, buf)) {
        ++line;
        if (!buf.empty() && buf.back() == '\r') buf.pop_back();
        if (buf.find_first_not_of(" \t") == std::string::npos) continue;

        TweetRecord t = parse_record(buf, line);
        if (t.timestamp < twitter_epoch())
            throw ParseError(line, fmt::format("timestamp {} predates 2006-01-01", format_iso8601(t.timestamp)));
        if (t.author_id != user_id)
            throw ValidationError(fmt::format("line {}: author '{}' does not match timeline user '{}'", line,
                                              t.author_id, user_id));
        if (t.timestamp < account_created || t.timestamp > download_time)
            throw ValidationError(fmt::format("line {}: tweet {} at {} outside [{}, {}]", line, t.tweet_id,
                                              format_iso8601(t.timestamp), format_iso8601(account_created),
                                              format_iso8601(download_time)));
        if (!seen.insert(t.tweet_id).second)
            throw ValidationError(fmt::format("line {}: duplicate tweet id '{}'", line, t.tweet_id));
        strip_self_references(t);
        tl.tweets.push_back(std::move(t));
    }
    std::sort(tl.tweets.begin(), tl.tweets.end(), [](const TweetRecord& a, const TweetRecord& b) {
        return std::tie(a.timestamp, a.tweet_id) < std::tie(b.timestamp, b.tweet_id);
    });
    return tl;
}

void serialize_timeline(const Timeline& tl, std::ostream& out) {
    for (const auto& t : tl.tweets) {
        nlohmann::ordered_json obj;
        obj["id"] = t.tweet_id;
        obj["user_id"] = t.author_id;
        obj["created_at"] = format_iso8601(t.timestamp);
        obj["text"] = t.text;
        obj["reply_to"] = null_or(t.replied_to_user);
        obj["retweet_of"] = null_or(t.retweeted_user);
        obj["quote_of"] = nullptr;
        obj["mentions"] = t.mentioned_users;
        obj["hashtags"] = t.hashtags;
        out << obj.dump() << '\n';
    }
}

std::string serialize_timeline(const Timeline& tl) {
    std::ostringstream os;
    serialize_timeline(tl, os);
    return os.str();
}

TweetKind classify_tweet(const TweetRecord& t) {
    if (t.retweeted_user) return TweetKind::Retweet;
    if (t.replied_to_user) return TweetKind::Reply;
    if (!t.mentioned_users.empty()) return TweetKind::Mention;
    return TweetKind::Indirect;
}

double SocialBreakdown::share_of_social(TweetKind kind) const {
    const std::size_t social = retweets + replies + mentions;
    if (social == 0) return 0.0;
    std::size_t n = 0;
    switch (kind) {
        case TweetKind::Retweet: n = retweets; break;
        case TweetKind::Reply: n = replies; break;
        case TweetKind::Mention: n = mentions; break;
        case TweetKind::Indirect: return 0.0;
    }
    return 100.0 * static_cast<double>(n) / static_cast<double>(social);
}

SocialBreakdown social_breakdown(const Timeline& tl) {
    if (tl.empty()) throw ValidationError(fmt::format("user {}: empty timeline has no breakdown", tl.user_id));

    SocialBreakdown b;
    b.tweets = tl.size();
    for (const auto& t : tl.tweets) {
        switch (classify_tweet(t)) {
            case TweetKind::Retweet: ++b.retweets; break;
            case TweetKind::Reply: ++b.replies; break;
            case TweetKind::Mention: ++b.mentions; break;
            case TweetKind::Indirect: ++b.indirect; break;
        }
    }
    const double n = static_cast<double>(b.tweets);
    b.pct_retweets = 100.0 * static_cast<double>(b.retweets) / n;
    b.pct_replies = 100.0 * static_cast<double>(b.replies) / n;
    b.pct_mentions = 100.0 * static_cast<double>(b.mentions) / n;
    b.pct_social = 100.0 * static_cast<double>(b.retweets + b.replies + b.mentions) / n;

    // Ties among social kinds resolve by classification precedence.
    std::size_t best = b.retweets;
    b.dominant_kind = TweetKind::Retweet;
    if (b.replies > best) best = b.replies, b.dominant_kind = TweetKind::Reply;
    if (b.mentions > best) best = b.mentions, b.dominant_kind = TweetKind::Mention;
    if (b.indirect > best) b.dominant_kind = TweetKind::Indirect;
    return b;
}

std::vector<Interaction> extract_interactions(const Timeline& tl) {
    std::vector<Interaction> out;
    for (const auto& t : tl.tweets) {
        const TweetKind kind = classify_tweet(t);
        if (!is_social(kind)) continue;
        std::set<UserId> alters = t.mentioned_users;
        if (t.replied_to_user) alters.insert(*t.replied_to_user);
        if (t.retweeted_user) alters.insert(*t.retweeted_user);
        alters.erase(tl.user_id);
        for (const auto& a : alters) {
            out.push_back(Interaction{a, t.timestamp, t.tweet_id, static_cast<int>(t.hashtags.size()), kind});
        }
    }
    return out;
}

}  // namespace egonet
