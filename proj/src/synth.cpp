#include "egonet/synth.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "egonet/corpus.hpp"
#include "egonet/csv.hpp"
#include "egonet/error.hpp"
#include "egonet/parallel.hpp"

namespace egonet {

namespace {

constexpr int kHashtagVocabulary = 50;

struct PendingTweet {
    Seconds offset;
    TweetKind kind;
    UserId alter;  // empty for indirect tweets
    int hashtags;
};

/// Event offsets of a homogeneous Poisson process on [from, to) years.
template <class Rng>
std::vector<Seconds> poisson_times(Rng& rng, double rate, double from_years, double to_years) {
    std::vector<Seconds> out;
    if (rate <= 0.0) return out;
    std::exponential_distribution<double> gap(rate);
    double t = from_years;
    while (true) {
        t += gap(rng);
        if (t >= to_years) break;
        out.emplace_back(static_cast<std::int64_t>(std::floor(t * kSecondsPerYear)));
    }
    return out;
}

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

int SynthConfig::structured_alters() const { return std::accumulate(ring_sizes.begin(), ring_sizes.end(), 0); }

void SynthConfig::validate() const {
    for (int s : ring_sizes) {
        if (s < 0) throw ValidationError("ring sizes must be non-negative");
    }
    for (std::size_t i = 0; i < ring_rates.size(); ++i) {
        if (!(ring_rates[i] >= 1.0)) throw ValidationError("planted ring rates must be at least 1 contact/year");
        if (i > 0 && !(ring_rates[i] < ring_rates[i - 1]))
            throw ValidationError("planted ring rates must be strictly decreasing");
    }
    if (!(duration_years > 0.0)) throw ValidationError("duration must be positive");
    if (!in_unit(hashtag_prob_activated) || !in_unit(hashtag_prob_plain) || !in_unit(activation_prob))
        throw ValidationError("probabilities must lie in [0, 1]");
    if (noise_alters < 0) throw ValidationError("noise alter count must be non-negative");
    if (noise_alters > 0 && !(noise_rate > 0.0 && noise_rate < 1.0))
        throw ValidationError("noise rate must lie in (0, 1) contacts/year");
    if (!(indirect_per_year >= 0.0)) throw ValidationError("indirect tweet rate must be non-negative");
    for (double w : kind_weights) {
        if (!(w >= 0.0)) throw ValidationError("kind weights must be non-negative");
    }
    if (!(kind_weights[0] + kind_weights[1] + kind_weights[2] > 0.0))
        throw ValidationError("kind weights must not all be zero");
    if (!(inactive_tail_days >= 0.0)) throw ValidationError("inactive tail must be non-negative");
}

UserId synth_ego_id(std::size_t index) { return fmt::format("synth_{:05d}", index); }

SynthEgo generate_ego(const SynthConfig& cfg, const UserId& ego_id) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::bernoulli_distribution activation(cfg.activation_prob);
    std::bernoulli_distribution tag_activated(cfg.hashtag_prob_activated);
    std::bernoulli_distribution tag_plain(cfg.hashtag_prob_plain);
    std::discrete_distribution<int> kind_draw(cfg.kind_weights.begin(), cfg.kind_weights.end());

    SynthEgo out;
    out.truth.ego_id = ego_id;

    std::vector<double> structured_rates;
    for (std::size_t r = 0; r < cfg.ring_sizes.size(); ++r) {
        for (int i = 0; i < cfg.ring_sizes[r]; ++i) {
            out.truth.alters.push_back(
                {fmt::format("{}_a{:04d}", ego_id, out.truth.alters.size()), static_cast<int>(r + 1), cfg.ring_rates[r], false});
            structured_rates.push_back(cfg.ring_rates[r]);
        }
    }
    for (int i = 0; i < cfg.noise_alters; ++i) {
        out.truth.alters.push_back({fmt::format("{}_a{:04d}", ego_id, out.truth.alters.size()), 0, cfg.noise_rate, false});
    }
    for (auto& a : out.truth.alters) a.activated = activation(rng);

    // Per-year rate assignment; reshuffling permutes planted rates among structured alters.
    const auto years = static_cast<std::size_t>(std::ceil(cfg.duration_years));
    std::vector<std::vector<double>> yearly(years, structured_rates);
    if (cfg.reshuffle_rates_yearly) {
        for (std::size_t y = 1; y < years; ++y) std::shuffle(yearly[y].begin(), yearly[y].end(), rng);
    }

    std::vector<PendingTweet> pending;
    static constexpr TweetKind kKinds[] = {TweetKind::Retweet, TweetKind::Reply, TweetKind::Mention};
    for (std::size_t a = 0; a < out.truth.alters.size(); ++a) {
        auto& alter = out.truth.alters[a];
        std::vector<Seconds> times;
        if (alter.ring == 0) {
            times = poisson_times(rng, alter.rate, 0.0, cfg.duration_years);
        } else {
            for (std::size_t y = 0; y < years; ++y) {
                const double from = static_cast<double>(y);
                const double to = std::min(from + 1.0, cfg.duration_years);
                auto chunk = poisson_times(rng, yearly[y][a], from, to);
                times.insert(times.end(), chunk.begin(), chunk.end());
            }
        }
        alter.contacts = times.size();
        for (std::size_t k = 0; k < times.size(); ++k) {
            int tags = 0;
            if (k == 0) {
                tags = alter.activated ? 1 : 0;
            } else {
                tags = (alter.activated ? tag_activated(rng) : tag_plain(rng)) ? 1 : 0;
            }
            pending.push_back({times[k], kKinds[kind_draw(rng)], alter.alter_id, tags});
        }
    }
    for (const auto& t : poisson_times(rng, cfg.indirect_per_year, 0.0, cfg.duration_years)) {
        pending.push_back({t, TweetKind::Indirect, {}, tag_plain(rng) ? 1 : 0});
    }
    std::stable_sort(pending.begin(), pending.end(),
                     [](const PendingTweet& a, const PendingTweet& b) { return a.offset < b.offset; });

    std::uniform_int_distribution<int> vocab(0, kHashtagVocabulary - 1);
    Timeline& tl = out.timeline;
    tl.user_id = ego_id;
    tl.account_created = cfg.start - days(365);
    tl.download_time = cfg.start + Seconds{static_cast<std::int64_t>(std::floor(cfg.duration_years * kSecondsPerYear)) +
                                           static_cast<std::int64_t>(std::llround(cfg.inactive_tail_days * kSecondsPerDay))};
    tl.tweets.reserve(pending.size());
    for (std::size_t i = 0; i < pending.size(); ++i) {
        const auto& p = pending[i];
        TweetRecord t;
        t.tweet_id = fmt::format("{}-{:07d}", ego_id, i);
        t.author_id = ego_id;
        t.timestamp = cfg.start + p.offset;
        switch (p.kind) {
            case TweetKind::Retweet: t.retweeted_user = p.alter; t.text = "RT"; break;
            case TweetKind::Reply: t.replied_to_user = p.alter; t.text = "reply"; break;
            case TweetKind::Mention: t.mentioned_users.insert(p.alter); t.text = "mention"; break;
            case TweetKind::Indirect: t.text = "status"; break;
        }
        for (int h = 0; h < p.hashtags; ++h) t.hashtags.push_back(fmt::format("tag{}", vocab(rng)));
        tl.tweets.push_back(std::move(t));
    }
    return out;
}

void generate_population(const SynthConfig& cfg, std::size_t n_egos, const std::filesystem::path& dir,
                         unsigned threads) {
    if (n_egos == 0) throw ValidationError("population needs at least one ego");
    cfg.validate();
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));

    std::vector<GroundTruth> truths(n_egos);
    std::vector<ProfileRow> profiles(n_egos);
    parallel_for(n_egos, threads, [&](std::size_t i) {
        SynthConfig ego_cfg = cfg;
        ego_cfg.seed = cfg.seed + i;
        const auto ego = generate_ego(ego_cfg, synth_ego_id(i));
        const auto path = dir / (ego.timeline.user_id + ".jsonl");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
        serialize_timeline(ego.timeline, out);
        if (!out) throw IoError(fmt::format("write failed for {}", path.string()));
        profiles[i] = {ego.timeline.user_id, ego.timeline.account_created, ego.timeline.download_time,
                       ego.timeline.size()};
        truths[i] = ego.truth;
    });
    write_profiles(dir / kProfilesFile, profiles);

    CsvTable truth({"ego_id", "alter_id", "ring", "rate", "activated", "contacts"});
    for (const auto& t : truths) {
        for (const auto& a : t.alters) {
            truth.add_row({t.ego_id, a.alter_id, std::to_string(a.ring), format_number(a.rate), a.activated ? "1" : "0",
                           std::to_string(a.contacts)});
        }
    }
    truth.write(dir / "truth.csv");
}

}  // namespace egonet
