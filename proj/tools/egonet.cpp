// egonet command-line front end.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "egonet/corpus.hpp"
#include "egonet/csv.hpp"
#include "egonet/error.hpp"
#include "egonet/model.hpp"
#include "egonet/pipeline.hpp"
#include "egonet/synth.hpp"
#include "egonet/time.hpp"

namespace fs = std::filesystem;
using namespace egonet;

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_logger_mt("egonet");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("EGONET_LOG")) {
        const auto level = spdlog::level::from_str(env);
        if (level == spdlog::level::off && std::string(env) != "off")
            spdlog::warn("EGONET_LOG='{}' is not a log level; keeping 'warn'", env);
        else
            spdlog::set_level(level);
    }
}

struct Globals {
    std::string input;
    std::string out;
    std::uint64_t seed = 1;
    unsigned threads = 0;

    unsigned worker_count() const {
        return threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    }
    fs::path require_input() const {
        if (input.empty()) throw ValidationError("--input is required");
        return input;
    }
    fs::path require_out() const {
        if (out.empty()) throw ValidationError("--out is required");
        return out;
    }
};

void ensure_parent(const fs::path& file) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

std::set<UserId> population_from(const fs::path& assessments, StudyPurpose purpose) {
    const auto rows = read_assessments(assessments);
    return select_study_population(rows, purpose);
}

void add_alignment_flags(CLI::App* cmd, PipelineParams& p) {
    cmd->add_option_function<std::string>(
           "--align",
           [&p](const std::string& v) { p.alignment = v == "outer" ? RingAlignment::Outer : RingAlignment::Inner; },
           "ring alignment when a window does not yield five circles")
        ->check(CLI::IsMember({"inner", "outer"}));
    cmd->add_option_function<std::string>(
           "--jump",
           [&p](const std::string& v) { p.jump = v == "magnitude" ? JumpWeighting::Magnitude : JumpWeighting::Binary; },
           "jump weighting")
        ->check(CLI::IsMember({"binary", "magnitude"}));
    cmd->add_flag_callback("--jump-magnitude", [&p] { p.jump = JumpWeighting::Magnitude; },
                           "count |ring change| instead of 1 per change");
}

void add_classify_flags(CLI::App* cmd, PipelineParams& p) {
    cmd->add_option("--cap", p.cap, "API tweet cap")->capture_default_str();
    cmd->add_option("--eps", p.eps, "DBSCAN radius on tweets/day")->capture_default_str();
    cmd->add_option("--min-pts", p.min_pts, "DBSCAN core size")->capture_default_str();
}

void add_window_flags(CLI::App* cmd, PipelineParams& p) {
    cmd->add_option("--width-days", p.width_days, "snapshot width")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--step-days", p.step_days, "snapshot step")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_bandwidth_flag(CLI::App* cmd, PipelineParams& p) {
    cmd->add_option("--bandwidth-quantile", p.bandwidth_quantile, "quantile of pairwise log-frequency gaps")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Ego network structure and dynamics from tweet archives"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--input", g.input, "archive directory (one <user>.jsonl per user, optional profiles.csv)");
    app.add_option("--out", g.out, "output file or directory");
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->capture_default_str();

    PipelineParams params;

    auto* ingest = app.add_subcommand("ingest-check", "parse and validate every archive, print per-user counts");

    auto* classify = app.add_subcommand("classify-users", "observability, abandonment, regularity, outliers");
    add_classify_flags(classify, params);

    std::string population_file;
    std::string out_dir;
    auto* stat = app.add_subcommand("static", "active networks and circles per ego");
    stat->add_option("--population", population_file, "assessments.csv from classify-users")->required();
    stat->add_option("--out-dir", out_dir, "output directory (defaults to --out)");
    add_bandwidth_flag(stat, params);

    std::string trajectories;
    auto* dyn = app.add_subcommand("dynamic", "ring stability over sliding windows");
    dyn->add_option("--population", population_file, "assessments.csv from classify-users")->required();
    dyn->add_option("--trajectories", trajectories, "also write per-window ring membership to this CSV");
    add_window_flags(dyn, params);
    add_bandwidth_flag(dyn, params);
    add_alignment_flags(dyn, params);

    std::string static_dir;
    std::string per_ego_out;
    auto* hash = app.add_subcommand("hashtags", "activation by hashtag per ring");
    hash->add_option("--static-dir", static_dir, "output directory of the static command")->required();
    hash->add_option("--per-ego", per_ego_out, "per-ego activation table (defaults to <out stem>_per_ego.csv)");

    SynthConfig synth_cfg;
    std::size_t n_egos = 0;
    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with planted circles");
    synth->add_option("--egos", n_egos, "number of egos")->required()->check(CLI::PositiveNumber);
    synth->add_option("--duration-years", synth_cfg.duration_years, "timeline length")->capture_default_str();
    synth->add_option("--activation-prob", synth_cfg.activation_prob, "P(first contact carries a hashtag)")
        ->capture_default_str();
    synth->add_option("--hashtag-prob-activated", synth_cfg.hashtag_prob_activated)->capture_default_str();
    synth->add_option("--hashtag-prob-plain", synth_cfg.hashtag_prob_plain)->capture_default_str();
    synth->add_option("--noise-alters", synth_cfg.noise_alters)->capture_default_str();
    synth->add_option("--indirect-per-year", synth_cfg.indirect_per_year)->capture_default_str();
    synth->add_flag("--reshuffle", synth_cfg.reshuffle_rates_yearly, "permute alter rates every year");
    std::string synth_start;
    synth->add_option("--start", synth_start, "first instant, ISO-8601 UTC");

    auto* report = app.add_subcommand("report", "summary table, per-user breakdown, stationarity profile");
    report->add_option("--population", population_file, "assessments.csv (classified on the fly when absent)");
    report->add_option("--stationarity-weeks", params.stationarity_weeks)->capture_default_str();
    add_classify_flags(report, params);

    auto* all = app.add_subcommand("run-all", "classify, static, dynamic, hashtags and report in one go");
    add_classify_flags(all, params);
    add_bandwidth_flag(all, params);
    add_window_flags(all, params);
    add_alignment_flags(all, params);
    all->add_option("--stationarity-weeks", params.stationarity_weeks)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    const char* stage = app.get_subcommands().front()->get_name().c_str();
    try {
        if (ingest->parsed()) {
            const auto corpus = load_corpus(g.require_input(), g.worker_count());
            CsvTable t({"user_id", "tweets", "social_tweets", "first_tweet", "last_tweet", "profile_missing"});
            for (const auto& e : corpus) {
                std::size_t social = 0;
                for (const auto& tw : e.timeline.tweets) social += is_social(classify_tweet(tw));
                t.add_row({e.timeline.user_id, std::to_string(e.timeline.tweets.size()), std::to_string(social),
                           e.timeline.empty() ? "" : format_iso8601(e.timeline.first_tweet()),
                           e.timeline.empty() ? "" : format_iso8601(e.timeline.last_tweet()),
                           e.profile_missing ? "1" : "0"});
            }
            std::cout << t.to_string();
            spdlog::info("{} archives ok", corpus.size());
        } else if (classify->parsed()) {
            const auto corpus = load_corpus(g.require_input(), g.worker_count());
            const auto out = g.require_out();
            ensure_parent(out);
            assessments_csv(classify_users(corpus, params)).write(out);
        } else if (stat->parsed()) {
            const fs::path dir = out_dir.empty() ? g.require_out() : fs::path(out_dir);
            const auto corpus = load_corpus(g.require_input(), g.worker_count());
            const auto population = population_from(population_file, StudyPurpose::Static);
            write_static(dir, run_static(corpus, population, params, g.worker_count()));
        } else if (dyn->parsed()) {
            const auto out = g.require_out();
            const auto corpus = load_corpus(g.require_input(), g.worker_count());
            const auto population = population_from(population_file, StudyPurpose::Dynamic);
            if (population.empty()) spdlog::warn("no ego has >= 730 days of observed tweets; stability table is empty");
            std::vector<SnapshotSeries> series;
            const auto reports = run_dynamic(corpus, population, params, g.worker_count(), &series);
            ensure_parent(out);
            stability_csv(reports).write(out);
            if (!trajectories.empty()) {
                ensure_parent(trajectories);
                trajectories_csv(series).write(trajectories);
            }
        } else if (hash->parsed()) {
            const fs::path out = g.require_out();
            const auto corpus = load_corpus(g.require_input(), g.worker_count());
            const auto layers = ego_layers_from_static(corpus, read_ring_assignments(static_dir));
            const auto result = run_hashtags(layers);
            ensure_parent(out);
            hashtag_ring_csv(result).write(out);
            const fs::path ego_out = per_ego_out.empty()
                                         ? out.parent_path() / (out.stem().string() + "_per_ego.csv")
                                         : fs::path(per_ego_out);
            hashtag_ego_csv(result).write(ego_out);
        } else if (synth->parsed()) {
            synth_cfg.seed = g.seed;
            if (!synth_start.empty()) synth_cfg.start = parse_iso8601(synth_start);
            generate_population(synth_cfg, n_egos, g.require_out(), g.worker_count());
        } else if (report->parsed()) {
            const auto corpus = load_corpus(g.require_input(), g.worker_count());
            const auto assessments =
                population_file.empty() ? classify_users(corpus, params) : read_assessments(population_file);
            const auto n = write_report(g.require_out(), corpus, assessments, params);
            spdlog::info("summarized {} users", n);
        } else if (all->parsed()) {
            const auto result = run_pipeline({g.require_input(), g.require_out(), params, g.worker_count()});
            if (!result.ok) {
                std::cerr << fmt::format("egonet: [{}] {}\n", result.failed_stage, result.error);
                return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << fmt::format("egonet: [{}] {}\n", stage, e.what());
        return 1;
    }
    return 0;
}
