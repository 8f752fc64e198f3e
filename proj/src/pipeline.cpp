#include "egonet/pipeline.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "egonet/error.hpp"
#include "egonet/mean_shift.hpp"
#include "egonet/parallel.hpp"
#include "egonet/report.hpp"

namespace egonet {

namespace fs = std::filesystem;

namespace {

Abandonment parse_abandonment(const std::string& s) {
    if (s == "active") return Abandonment::Active;
    if (s == "abandoned") return Abandonment::Abandoned;
    if (s == "undetermined") return Abandonment::Undetermined;
    throw ValidationError(fmt::format("unknown abandonment verdict '{}'", s));
}

Regularity parse_regularity(const std::string& s) {
    if (s == "regular") return Regularity::Regular;
    if (s == "sporadic") return Regularity::Sporadic;
    if (s == "undetermined") return Regularity::Undetermined;
    throw ValidationError(fmt::format("unknown regularity verdict '{}'", s));
}

std::string ring_label(RingAlignment a) { return a == RingAlignment::Inner ? "inner" : "outer"; }
std::string jump_label(JumpWeighting j) { return j == JumpWeighting::Binary ? "binary" : "magnitude"; }

std::vector<const CorpusEntry*> members_of(std::span<const CorpusEntry> corpus, const std::set<UserId>& population) {
    std::vector<const CorpusEntry*> out;
    std::set<UserId> found;
    for (const auto& e : corpus) {
        if (population.count(e.timeline.user_id)) {
            out.push_back(&e);
            found.insert(e.timeline.user_id);
        }
    }
    for (const auto& u : population) {
        if (!found.count(u)) spdlog::warn("population user {} has no archive; skipped", u);
    }
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

}  // namespace

std::vector<UserAssessment> classify_users(std::span<const CorpusEntry> corpus, const PipelineParams& params) {
    if (corpus.empty()) throw ValidationError("no archives to classify");
    std::vector<Timeline> timelines;
    std::vector<std::size_t> lifetime;
    timelines.reserve(corpus.size());
    for (const auto& e : corpus) {
        timelines.push_back(e.timeline);
        lifetime.push_back(e.lifetime_tweets);
    }
    return assess_population(timelines, lifetime, params.cap, params.eps, params.min_pts);
}

CsvTable assessments_csv(std::span<const UserAssessment> assessments) {
    CsvTable t({"user_id", "observability", "coverage", "active_life_years", "tweets_per_day", "abandonment",
                "regularity", "outlier", "span_days"});
    for (const auto& a : assessments) {
        t.add_row({a.user_id, std::string(to_string(a.observability)), format_number(a.coverage_ratio),
                   format_number(a.active_life_years), format_number(a.daily_frequency),
                   std::string(to_string(a.abandonment)), std::string(to_string(a.regularity)),
                   a.is_outlier ? "1" : "0", format_number(a.observed_span_days)});
    }
    return t;
}

std::vector<UserAssessment> read_assessments(const fs::path& path) {
    const auto t = CsvTable::read(path);
    const auto c_user = t.column("user_id"), c_obs = t.column("observability"), c_cov = t.column("coverage"),
               c_life = t.column("active_life_years"), c_freq = t.column("tweets_per_day"),
               c_ab = t.column("abandonment"), c_reg = t.column("regularity"), c_out = t.column("outlier"),
               c_span = t.column("span_days");
    std::vector<UserAssessment> out;
    for (const auto& r : t.rows()) {
        UserAssessment a;
        a.user_id = r[c_user];
        a.observability = r[c_obs] == "partial" ? Observability::Partial : Observability::Full;
        a.coverage_ratio = parse_double(r[c_cov]);
        a.active_life_years = parse_double(r[c_life]);
        a.daily_frequency = parse_double(r[c_freq]);
        a.abandonment = parse_abandonment(r[c_ab]);
        a.regularity = parse_regularity(r[c_reg]);
        a.is_outlier = r[c_out] == "1";
        a.observed_span_days = parse_double(r[c_span]);
        out.push_back(std::move(a));
    }
    return out;
}

Window observed_window(const Timeline& tl) {
    if (tl.empty()) throw ValidationError(fmt::format("user {}: no tweets, no observation window", tl.user_id));
    return {tl.first_tweet(), tl.last_tweet() + Seconds{1}};
}

StaticEgo analyze_static(const Timeline& tl, double bandwidth_quantile) {
    StaticEgo s;
    s.ego_id = tl.user_id;
    const auto interactions = extract_interactions(tl);
    s.total = build_ego_network(tl.user_id, interactions, observed_window(tl));
    s.active = active_network(s.total);
    if (!s.active.ties.empty()) s.layers = detect_circles(s.active, bandwidth_quantile);
    return s;
}

std::vector<StaticEgo> run_static(std::span<const CorpusEntry> corpus, const std::set<UserId>& population,
                                  const PipelineParams& params, unsigned threads) {
    const auto members = members_of(corpus, population);
    std::vector<StaticEgo> out(members.size());
    parallel_for(members.size(), threads,
                 [&](std::size_t i) { out[i] = analyze_static(members[i]->timeline, params.bandwidth_quantile); });
    return out;
}

void write_static(const fs::path& dir, std::span<const StaticEgo> egos) {
    ensure_dir(dir);
    std::size_t max_circles = 1;
    for (const auto& e : egos) {
        if (e.layers) max_circles = std::max(max_circles, e.layers->num_circles);
    }

    std::vector<std::string> layer_header{"ego_id", "num_circles"};
    for (std::size_t k = 1; k <= max_circles; ++k) layer_header.push_back(fmt::format("circle_{}", k));
    std::vector<std::string> ratio_header{"ego_id"};
    for (std::size_t k = 1; k < max_circles; ++k) ratio_header.push_back(fmt::format("ratio_{}", k));
    if (ratio_header.size() == 1) ratio_header.push_back("ratio_1");

    CsvTable layers(layer_header), ratios(ratio_header);
    CsvTable total({"ego_id", "total_alters"}), active({"ego_id", "active_alters"});
    CsvTable rings({"ego_id", "alter_id", "ring", "frequency_per_year", "interactions", "hashtag_total", "activated"});
    for (const auto& e : egos) {
        total.add_row({e.ego_id, std::to_string(e.total.ties.size())});
        active.add_row({e.ego_id, std::to_string(e.active.ties.size())});

        std::vector<std::string> lrow{e.ego_id, std::to_string(e.layers ? e.layers->num_circles : 0)};
        std::vector<std::string> rrow{e.ego_id};
        if (e.layers) {
            for (auto c : e.layers->circle_sizes) lrow.push_back(std::to_string(c));
            for (double r : e.layers->scaling_ratios) rrow.push_back(format_number(r));
            for (const auto& [alter, ring] : e.layers->ring_of) {
                const auto& tie = e.active.ties.at(alter);
                rings.add_row({e.ego_id, alter, std::to_string(ring), format_number(tie.frequency_per_year),
                               std::to_string(tie.interaction_count), std::to_string(tie.hashtag_total),
                               tie.activated_by_hashtag ? "1" : "0"});
            }
        }
        lrow.resize(layer_header.size());
        rrow.resize(ratio_header.size());
        layers.add_row(std::move(lrow));
        ratios.add_row(std::move(rrow));
    }
    layers.write(dir / "layers.csv");
    ratios.write(dir / "ratios.csv");
    total.write(dir / "total_size.csv");
    active.write(dir / "active_size.csv");
    rings.write(dir / "rings.csv");
}

std::map<UserId, std::map<UserId, int>> read_ring_assignments(const fs::path& static_dir) {
    const auto t = CsvTable::read(static_dir / "rings.csv");
    const auto c_ego = t.column("ego_id"), c_alter = t.column("alter_id"), c_ring = t.column("ring");
    std::map<UserId, std::map<UserId, int>> out;
    for (const auto& r : t.rows()) out[r[c_ego]][r[c_alter]] = static_cast<int>(parse_double(r[c_ring]));
    return out;
}

std::vector<StabilityReport> run_dynamic(std::span<const CorpusEntry> corpus, const std::set<UserId>& population,
                                         const PipelineParams& params, unsigned threads,
                                         std::vector<SnapshotSeries>* series_out) {
    if (params.width_days <= 0 || params.step_days <= 0) throw ValidationError("window width and step must be positive");
    const auto members = members_of(corpus, population);
    std::vector<std::optional<StabilityReport>> reports(members.size());
    std::vector<SnapshotSeries> series(members.size());
    parallel_for(members.size(), threads, [&](std::size_t i) {
        const Timeline& tl = members[i]->timeline;
        if (tl.empty()) return;
        const auto windows = make_windows(tl.first_tweet(), tl.last_tweet(), days(params.width_days), days(params.step_days));
        if (windows.size() < 2) {
            spdlog::info("ego {}: {} window(s), skipped in dynamic analysis", tl.user_id, windows.size());
            return;
        }
        const auto interactions = extract_interactions(tl);
        series[i] = snapshot_rings(tl.user_id, interactions, windows, params.bandwidth_quantile, params.alignment);
        reports[i] = stability_report(series[i], params.jump);
    });
    std::vector<StabilityReport> out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!reports[i]) continue;
        out.push_back(std::move(*reports[i]));
        if (series_out) series_out->push_back(std::move(series[i]));
    }
    return out;
}

CsvTable stability_csv(std::span<const StabilityReport> reports) {
    CsvTable t({"ego_id", "ring", "mean_jaccard", "mean_jump", "pairs_used"});
    for (const auto& r : reports) {
        for (int ring = 1; ring <= kNumRings; ++ring) {
            const auto i = static_cast<std::size_t>(ring - 1);
            t.add_row({r.ego_id, std::to_string(ring), format_number(r.jaccard[i].mean), format_number(r.jump[i].mean),
                       std::to_string(r.jaccard[i].samples)});
        }
    }
    return t;
}

CsvTable trajectories_csv(std::span<const SnapshotSeries> series) {
    CsvTable t({"ego_id", "window_start", "alter_id", "ring"});
    for (const auto& s : series) {
        for (std::size_t w = 0; w < s.windows.size(); ++w) {
            for (const auto& [alter, ring] : s.ring_membership[w]) {
                t.add_row({s.ego_id, format_iso8601(s.windows[w].start), alter, std::to_string(ring)});
            }
        }
    }
    return t;
}

std::vector<EgoLayers> ego_layers(std::span<const StaticEgo> egos) {
    std::vector<EgoLayers> out;
    for (const auto& e : egos) {
        if (e.layers) out.push_back({e.active, *e.layers});
    }
    return out;
}

std::vector<EgoLayers> ego_layers_from_static(std::span<const CorpusEntry> corpus,
                                              const std::map<UserId, std::map<UserId, int>>& rings) {
    std::vector<EgoLayers> out;
    for (const auto& e : corpus) {
        const auto it = rings.find(e.timeline.user_id);
        if (it == rings.end() || e.timeline.empty()) continue;
        const auto net =
            build_ego_network(e.timeline.user_id, extract_interactions(e.timeline), observed_window(e.timeline));
        EgoLayers el;
        el.active.ego_id = net.ego_id;
        el.active.window = net.window;
        el.layers.ego_id = net.ego_id;
        for (const auto& [alter, ring] : it->second) {
            const auto tie = net.ties.find(alter);
            if (tie == net.ties.end())
                throw ValidationError(fmt::format("ego {}: alter {} from rings.csv not found in archive", net.ego_id, alter));
            el.active.ties.emplace(alter, tie->second);
            el.layers.ring_of.emplace(alter, ring);
            el.layers.num_circles = std::max<std::size_t>(el.layers.num_circles, static_cast<std::size_t>(ring));
        }
        out.push_back(std::move(el));
    }
    return out;
}

HashtagReport run_hashtags(std::span<const EgoLayers> egos) {
    return {activation_stats(egos), frequency_by_activation(egos), hashtag_intensity(egos), hashtag_totals(egos)};
}

CsvTable hashtag_ring_csv(const HashtagReport& r) {
    CsvTable t({"ring", "mean_activation_pct", "ci95", "freq_mean_activated", "freq_mean_not", "n_activated", "n_not",
                "intensity_activated", "intensity_not", "egos", "freq_sd_activated", "freq_sd_not",
                "hashtag_total_activated", "hashtag_total_not"});
    for (std::size_t i = 0; i < r.activation.per_ring.size(); ++i) {
        const auto& a = r.activation.per_ring[i];
        const auto& f = r.frequency[i];
        const auto& h = r.intensity[i];
        const auto& tot = r.totals[i];
        auto mean_or_empty = [](const SampleSummary& s) { return s.n ? format_number(s.mean) : std::string{}; };
        auto sd_or_empty = [](const SampleSummary& s) { return s.n ? format_number(s.sd) : std::string{}; };
        t.add_row({std::to_string(a.ring), format_number(a.mean_pct), format_number(a.ci95), mean_or_empty(f.activated),
                   mean_or_empty(f.not_activated), std::to_string(f.activated.n), std::to_string(f.not_activated.n),
                   mean_or_empty(h.activated), mean_or_empty(h.not_activated), std::to_string(a.egos),
                   sd_or_empty(f.activated), sd_or_empty(f.not_activated), mean_or_empty(tot.activated),
                   mean_or_empty(tot.not_activated)});
    }
    return t;
}

CsvTable hashtag_ego_csv(const HashtagReport& r) {
    CsvTable t({"ego_id", "active_alters", "activated", "activation_pct"});
    for (const auto& e : r.activation.per_ego) {
        t.add_row({e.ego_id, std::to_string(e.active_alters), std::to_string(e.activated), format_number(e.activation_pct)});
    }
    return t;
}

std::size_t write_report(const fs::path& dir, std::span<const CorpusEntry> corpus,
                         std::span<const UserAssessment> assessments, const PipelineParams& params) {
    ensure_dir(dir);
    std::map<UserId, const UserAssessment*> by_user;
    for (const auto& a : assessments) by_user[a.user_id] = &a;

    std::vector<UserSummaryRow> rows;
    std::vector<Timeline> stationary_inputs;
    for (const auto& e : corpus) {
        const auto it = by_user.find(e.timeline.user_id);
        if (it == by_user.end() || e.timeline.empty()) continue;
        const auto& a = *it->second;
        if (a.abandonment != Abandonment::Active || a.regularity != Regularity::Regular) continue;
        rows.push_back(summarize_user(e.timeline, a));
        if (a.observability == Observability::Full && !e.profile_missing) stationary_inputs.push_back(e.timeline);
    }
    summary_table(rows).to_csv().write(dir / "summary.csv");
    user_breakdown_csv(rows).write(dir / "users.csv");

    std::map<TweetKind, std::size_t> top;
    for (auto k : {TweetKind::Retweet, TweetKind::Reply, TweetKind::Mention, TweetKind::Indirect}) top[k] = 0;
    for (const auto& r : rows) ++top[r.breakdown.dominant_kind];
    CsvTable top_csv({"dominant_kind", "users"});
    for (const auto& [k, n] : top) top_csv.add_row({std::string(to_string(k)), std::to_string(n)});
    top_csv.write(dir / "top_activity.csv");

    CsvTable stat({"week", "mean_normalized", "users"});
    if (!stationary_inputs.empty()) {
        for (const auto& p : stationarity_profile(stationary_inputs, params.stationarity_weeks)) {
            stat.add_row({std::to_string(p.week), format_number(p.mean_normalized), std::to_string(p.users)});
        }
    }
    stat.write(dir / "stationarity.csv");
    return rows.size();
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    using json = nlohmann::ordered_json;
    const auto& p = cfg.params;
    json manifest;
    manifest["tool"] = "egonet";
    manifest["version"] = kToolVersion;
    manifest["input"] = cfg.input.string();
    manifest["parameters"] = {
        {"cap", p.cap},
        {"dbscan_eps", p.eps},
        {"dbscan_min_pts", p.min_pts},
        {"bandwidth_quantile", p.bandwidth_quantile},
        {"window_width_days", p.width_days},
        {"window_step_days", p.step_days},
        {"ring_alignment", ring_label(p.alignment)},
        {"jump_weighting", jump_label(p.jump)},
        {"stationarity_weeks", p.stationarity_weeks},
        {"abandonment_grace_days", to_days(kAbandonmentGrace)},
        {"regularity_min_daily_rate", 1.0 / 3.0},
        {"regularity_min_month_fraction", 0.5},
        {"active_tie_threshold_per_year", kActiveTieThreshold},
        {"min_tie_duration_days", to_days(kMinTieDuration)},
        {"static_min_span_days", 365},
        {"dynamic_min_span_days", 730},
        {"mean_shift_merge_fraction", MeanShiftOptions{}.merge_fraction},
        {"mean_shift_tolerance", MeanShiftOptions{}.tolerance},
        {"mean_shift_max_iterations", MeanShiftOptions{}.max_iterations},
        {"days_per_year", kDaysPerYear},
    };
    json counts = json::object();
    json stages = json::array();
    json notes = json::array();
    PipelineResult result;

    std::vector<CorpusEntry> corpus;
    std::vector<UserAssessment> assessments;
    std::vector<StaticEgo> static_egos;

    auto run_stage = [&](const char* name, auto&& body) {
        if (!result.ok) {
            stages.push_back({{"name", name}, {"status", "skipped"}});
            return;
        }
        try {
            body();
            stages.push_back({{"name", name}, {"status", "ok"}});
        } catch (const std::exception& e) {
            result.ok = false;
            result.failed_stage = name;
            result.error = e.what();
            spdlog::error("[{}] {}", name, e.what());
            stages.push_back({{"name", name}, {"status", "FAILED"}, {"error", e.what()}});
        }
    };

    try {
        ensure_dir(cfg.output);
    } catch (const std::exception& e) {
        return {false, "setup", e.what()};
    }

    run_stage("classify", [&] {
        corpus = load_corpus(cfg.input, cfg.threads);
        counts["archives"] = corpus.size();
        json missing = json::array();
        for (const auto& e : corpus) {
            if (e.profile_missing) missing.push_back(e.timeline.user_id);
        }
        manifest["profile_missing"] = missing;
        assessments = classify_users(corpus, p);
        assessments_csv(assessments).write(cfg.output / "assessments.csv");
        std::size_t with_tweets = 0, active = 0, regular = 0, both = 0, outliers = 0, partial = 0;
        for (const auto& a : assessments) {
            with_tweets += a.observed_tweet_count > 0;
            active += a.abandonment == Abandonment::Active;
            regular += a.regularity == Regularity::Regular;
            both += a.abandonment == Abandonment::Active && a.regularity == Regularity::Regular;
            outliers += a.is_outlier;
            partial += a.observability == Observability::Partial;
        }
        counts["with_tweets"] = with_tweets;
        counts["partially_observed"] = partial;
        counts["active"] = active;
        counts["regular"] = regular;
        counts["active_and_regular"] = both;
        counts["frequency_outliers"] = outliers;
    });

    run_stage("static", [&] {
        const auto population = select_study_population(assessments, StudyPurpose::Static);
        counts["static_population"] = population.size();
        static_egos = run_static(corpus, population, p, cfg.threads);
        write_static(cfg.output / "static", static_egos);
        if (population.empty()) notes.push_back("static: no ego passed the static filter (>= 365 days of observed tweets)");
    });

    run_stage("dynamic", [&] {
        const auto population = select_study_population(assessments, StudyPurpose::Dynamic);
        counts["dynamic_population"] = population.size();
        const auto reports = run_dynamic(corpus, population, p, cfg.threads);
        counts["dynamic_egos_reported"] = reports.size();
        stability_csv(reports).write(cfg.output / "stability.csv");
        if (population.empty())
            notes.push_back("dynamic: no ego has >= 730 days of observed tweets; stability table is empty");
    });

    run_stage("hashtags", [&] {
        const auto layers = ego_layers(static_egos);
        const auto report = run_hashtags(layers);
        hashtag_ring_csv(report).write(cfg.output / "hashtags.csv");
        hashtag_ego_csv(report).write(cfg.output / "hashtags_per_ego.csv");
    });

    run_stage("report", [&] { counts["summarized_users"] = write_report(cfg.output / "report", corpus, assessments, p); });

    manifest["counts"] = counts;
    manifest["stages"] = stages;
    manifest["notes"] = notes;
    manifest["status"] = result.ok ? "ok" : "FAILED";
    if (!result.ok) manifest["failed_stage"] = result.failed_stage;

    std::ofstream out(cfg.output / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
    if (!out) return {false, "manifest", "cannot write manifest.json"};
    return result;
}

}  // namespace egonet
