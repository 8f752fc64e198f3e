#include "egonet/corpus.hpp"

#include <fmt/format.h>

#include <fstream>

#include "egonet/csv.hpp"
#include "egonet/error.hpp"
#include "egonet/parallel.hpp"

namespace egonet {

namespace fs = std::filesystem;

std::map<UserId, ProfileRow> read_profiles(const fs::path& path) {
    std::map<UserId, ProfileRow> out;
    if (!fs::exists(path)) return out;
    const auto table = CsvTable::read(path);
    const auto uid = table.column("user_id");
    const auto created = table.column("account_created");
    const auto downloaded = table.column("download_time");
    const auto lifetime = table.column("lifetime_tweets");
    for (const auto& r : table.rows()) {
        ProfileRow p;
        p.user_id = r[uid];
        p.account_created = parse_iso8601(r[created]);
        p.download_time = parse_iso8601(r[downloaded]);
        const double n = parse_double(r[lifetime]);
        if (!(n >= 0.0)) throw ValidationError(fmt::format("profile {}: bad lifetime tweet count", p.user_id));
        p.lifetime_tweets = static_cast<std::size_t>(n);
        out.emplace(p.user_id, p);
    }
    return out;
}

void write_profiles(const fs::path& path, const std::vector<ProfileRow>& rows) {
    CsvTable t({"user_id", "account_created", "download_time", "lifetime_tweets"});
    for (const auto& p : rows) {
        t.add_row({p.user_id, format_iso8601(p.account_created), format_iso8601(p.download_time),
                   std::to_string(p.lifetime_tweets)});
    }
    t.write(path);
}

std::vector<UserId> list_archives(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError(fmt::format("{} is not a directory", dir.string()));
    std::vector<UserId> users;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == kArchiveExtension) users.push_back(e.path().stem().string());
    }
    std::sort(users.begin(), users.end());
    return users;
}

CorpusEntry load_user(const fs::path& dir, const UserId& user, const std::map<UserId, ProfileRow>& profiles) {
    const auto path = dir / (user + kArchiveExtension);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot read {}", path.string()));

    CorpusEntry e;
    try {
        if (const auto it = profiles.find(user); it != profiles.end()) {
            e.timeline = parse_timeline(in, user, it->second.account_created, it->second.download_time);
            e.lifetime_tweets = it->second.lifetime_tweets;
        } else {
            e.timeline = parse_timeline(in, user, twitter_epoch(), Instant::max());
            e.profile_missing = true;
            e.lifetime_tweets = e.timeline.size();
            if (!e.timeline.empty()) {
                e.timeline.account_created = e.timeline.first_tweet();
                e.timeline.download_time = e.timeline.last_tweet();
            } else {
                e.timeline.account_created = e.timeline.download_time = twitter_epoch();
            }
        }
    } catch (const ParseError& err) {
        throw ParseError(err.line(), err.detail(), path.filename().string());
    } catch (const ValidationError& err) {
        throw ValidationError(fmt::format("{}: {}", path.filename().string(), err.what()));
    }
    return e;
}

std::vector<CorpusEntry> load_corpus(const fs::path& dir, unsigned threads) {
    const auto users = list_archives(dir);
    const auto profiles = read_profiles(dir / kProfilesFile);
    std::vector<CorpusEntry> out(users.size());
    parallel_for(users.size(), threads, [&](std::size_t i) { out[i] = load_user(dir, users[i], profiles); });
    return out;
}

}  // namespace egonet
