#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <vector>

#include "egonet/model.hpp"

namespace egonet {

/// Optional per-corpus profile sidecar:
/// user_id,account_created,download_time,lifetime_tweets
inline constexpr const char* kProfilesFile = "profiles.csv";
inline constexpr const char* kArchiveExtension = ".jsonl";

struct ProfileRow {
    UserId user_id;
    Instant account_created;
    Instant download_time;
    std::size_t lifetime_tweets = 0;
};

std::map<UserId, ProfileRow> read_profiles(const std::filesystem::path& path);
void write_profiles(const std::filesystem::path& path, const std::vector<ProfileRow>& rows);

struct CorpusEntry {
    Timeline timeline;
    std::size_t lifetime_tweets = 0;
    bool profile_missing = false;  // creation/download times and lifetime count inferred from the tweets
};

/// Sorted user ids of the `*.jsonl` archives in `dir`.
std::vector<UserId> list_archives(const std::filesystem::path& dir);

/// Parses one archive. Without a profile the account creation and download
/// time default to the first and last tweet and the lifetime count to the
/// observed count.
CorpusEntry load_user(const std::filesystem::path& dir, const UserId& user,
                      const std::map<UserId, ProfileRow>& profiles);

/// Loads every archive in `dir`, sorted by user id. Errors name the file.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir, unsigned threads = 1);

}  // namespace egonet
