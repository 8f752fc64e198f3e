#include <doctest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "egonet/corpus.hpp"
#include "egonet/csv.hpp"
#include "egonet/error.hpp"
#include "egonet/pipeline.hpp"
#include "egonet/report.hpp"
#include "egonet/synth.hpp"
#include "helpers.hpp"

using namespace egonet;
using namespace egonet::testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json manifest_of(const fs::path& out) { return nlohmann::json::parse(slurp(out / "manifest.json")); }

UserSummaryRow row(double tweets_per_day) {
    UserSummaryRow r;
    r.tweets_per_day = tweets_per_day;
    r.active_life_years = 5.0;
    return r;
}

void write_archive(const fs::path& dir, const Timeline& tl) {
    std::ofstream out(dir / (tl.user_id + ".jsonl"), std::ios::binary);
    serialize_timeline(tl, out);
}

}  // namespace

TEST_CASE("format_number") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(2.5) == "2.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e20) == "1e+20");
    CHECK(format_number(std::nan("")).empty());
    CHECK(format_number(std::optional<double>{}).empty());
}

TEST_CASE("numeric fields round-trip at 12 significant digits") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> mant(-10.0, 10.0);
    std::uniform_int_distribution<int> expo(-30, 30);
    for (int i = 0; i < 10000; ++i) {
        const double v = mant(rng) * std::pow(10.0, expo(rng));
        const auto once = format_number(v);
        CHECK(format_number(parse_double(once)) == once);
    }
}

TEST_CASE("csv quoting and parsing") {
    CsvTable t({"a", "b"});
    t.add_row({"x,y", "say \"hi\""});
    t.add_row({"line\nbreak", ""});
    const auto text = t.to_string();
    CHECK(text.find('\r') == std::string::npos);
    const auto back = CsvTable::parse(text);
    CHECK(back.header() == t.header());
    CHECK(back.rows() == t.rows());
    CHECK_THROWS_AS(t.add_row({"only one"}), ValidationError);
    CHECK_THROWS_AS(t.column("c"), ValidationError);
    CHECK(std::isnan(parse_double("")));
}

TEST_CASE("summary_table") {
    CHECK_THROWS_AS(summary_table(std::vector<UserSummaryRow>{}), ValidationError);

    const auto one = summary_table(std::vector<UserSummaryRow>{row(3.0)});
    for (const auto& c : one.columns) CHECK(c.sd == 0.0);

    const auto two = summary_table(std::vector<UserSummaryRow>{row(2.0), row(4.0)});
    CHECK(two.at("tweets_per_day").mean == doctest::Approx(3.0));
    CHECK(two.at("tweets_per_day").sd == doctest::Approx(1.0));
    CHECK(two.at("active_life_years").sd == 0.0);

    const auto csv = two.to_csv();
    CHECK(csv.header().front() == "statistic");
    CHECK(csv.rows()[1][0] == "sd_population");
    CHECK(csv.header().size() == 9);
}

TEST_CASE("corpus loading") {
    const auto dir = scratch_dir("corpus");
    auto tl = timeline_at({day0(), day0() + days(3)}, day0() + days(10));
    tl.user_id = "alice";
    for (auto& t : tl.tweets) t.author_id = "alice";
    write_archive(dir, tl);
    write_profiles(dir / kProfilesFile, {{"alice", day0() - days(100), day0() + days(10), 50}});
    auto bob = tl;
    bob.user_id = "bob";
    for (auto& t : bob.tweets) t.author_id = "bob";
    write_archive(dir, bob);
    std::ofstream(dir / "notes.txt") << "ignored";

    const auto corpus = load_corpus(dir, 2);
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0].timeline.user_id == "alice");
    CHECK(corpus[0].lifetime_tweets == 50);
    CHECK_FALSE(corpus[0].profile_missing);
    CHECK(corpus[0].timeline.account_created == day0() - days(100));
    CHECK(corpus[1].profile_missing);
    CHECK(corpus[1].lifetime_tweets == 2);
    CHECK(corpus[1].timeline.download_time == day0() + days(3));

    std::ofstream(dir / "carol.jsonl") << "{\"id\":\"1\"}\n{broken\n";
    try {
        load_corpus(dir);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("carol.jsonl") != std::string::npos);
        CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(load_corpus(dir / "missing"), IoError);
}

TEST_CASE("run_pipeline on a synthetic corpus") {
    const auto root = scratch_dir("pipeline");
    generate_population(SynthConfig{}, 12, root / "in");
    PipelineConfig cfg{root / "in", root / "out", {}, 2};
    const auto result = run_pipeline(cfg);
    CHECK(result.ok);
    for (const char* f : {"assessments.csv", "static/layers.csv", "static/ratios.csv", "static/total_size.csv",
                          "static/active_size.csv", "static/rings.csv", "stability.csv", "hashtags.csv",
                          "hashtags_per_ego.csv", "report/summary.csv", "report/users.csv",
                          "report/top_activity.csv", "report/stationarity.csv", "manifest.json"})
        CHECK_MESSAGE(fs::exists(root / "out" / f), f);
    const auto m = manifest_of(root / "out");
    CHECK(m["status"] == "ok");
    CHECK(m["counts"]["archives"] == 12);
    CHECK(m["counts"]["static_population"] == 12);
    CHECK(m["counts"]["dynamic_population"] == 12);
    CHECK(m["parameters"]["bandwidth_quantile"] == 0.3);
    CHECK(m["parameters"]["window_step_days"] == 30);
    CHECK(m["parameters"]["dbscan_min_pts"] == 5);
    CHECK_FALSE(m.contains("threads"));

    const auto stability = CsvTable::read(root / "out" / "stability.csv");
    CHECK(stability.header() == std::vector<std::string>{"ego_id", "ring", "mean_jaccard", "mean_jump", "pairs_used"});
    CHECK(stability.rows().size() == 12 * 5);
    const auto hashtags = CsvTable::read(root / "out" / "hashtags.csv");
    CHECK(hashtags.column("intensity_not") == 8);
    const auto assessments = CsvTable::read(root / "out" / "assessments.csv");
    CHECK(assessments.header() == std::vector<std::string>{"user_id", "observability", "coverage",
                                                           "active_life_years", "tweets_per_day", "abandonment",
                                                           "regularity", "outlier", "span_days"});
}

TEST_CASE("assessments round-trip through CSV") {
    const auto root = scratch_dir("assess_rt");
    generate_population(SynthConfig{}, 6, root);
    const auto corpus = load_corpus(root);
    const auto a = classify_users(corpus, PipelineParams{});
    assessments_csv(a).write(root / "a.csv");
    const auto back = read_assessments(root / "a.csv");
    CHECK(assessments_csv(back).to_string() == assessments_csv(a).to_string());
    CHECK(select_study_population(back, StudyPurpose::Static) == select_study_population(a, StudyPurpose::Static));
}

TEST_CASE("run_pipeline: empty input fails in classify") {
    const auto root = scratch_dir("pipeline_empty");
    fs::create_directories(root / "in");
    const auto result = run_pipeline({root / "in", root / "out", {}, 1});
    CHECK_FALSE(result.ok);
    CHECK(result.failed_stage == "classify");
    const auto m = manifest_of(root / "out");
    CHECK(m["status"] == "FAILED");
    CHECK(m["failed_stage"] == "classify");
    CHECK(m["stages"][1]["status"] == "skipped");
}

TEST_CASE("run_pipeline: 400-day spans give an empty stability table with a note") {
    const auto root = scratch_dir("pipeline_short");
    SynthConfig cfg;
    cfg.duration_years = 400.0 / kDaysPerYear;
    generate_population(cfg, 8, root / "in");
    const auto result = run_pipeline({root / "in", root / "out", {}, 1});
    CHECK(result.ok);
    const auto m = manifest_of(root / "out");
    CHECK(m["counts"]["static_population"] == 8);
    CHECK(m["counts"]["dynamic_population"] == 0);
    CHECK(m["notes"].size() == 1);
    CHECK(slurp(root / "out" / "stability.csv") == "ego_id,ring,mean_jaccard,mean_jump,pairs_used\n");
}

TEST_CASE("run_pipeline keeps partial outputs when a later stage fails") {
    // Two tweets a month apart: classified, but sporadic, so the report has nobody to summarize.
    const auto root = scratch_dir("pipeline_partial");
    fs::create_directories(root / "in");
    auto tl = timeline_at({day0(), day0() + days(40)}, day0() + days(41));
    write_archive(root / "in", tl);
    const auto result = run_pipeline({root / "in", root / "out", {}, 1});
    CHECK_FALSE(result.ok);
    CHECK(result.failed_stage == "report");
    CHECK(fs::exists(root / "out" / "assessments.csv"));
    CHECK(fs::exists(root / "out" / "stability.csv"));
    CHECK(manifest_of(root / "out")["status"] == "FAILED");
    CHECK(manifest_of(root / "out")["profile_missing"][0] == "ego");
}

TEST_CASE("static outputs and ring assignments round-trip") {
    const auto root = scratch_dir("static_rt");
    generate_population(SynthConfig{}, 3, root / "in");
    const auto corpus = load_corpus(root / "in");
    std::set<UserId> pop;
    for (const auto& e : corpus) pop.insert(e.timeline.user_id);
    const auto egos = run_static(corpus, pop, PipelineParams{}, 1);
    write_static(root / "static", egos);
    const auto rings = read_ring_assignments(root / "static");
    const auto rebuilt = ego_layers_from_static(corpus, rings);
    const auto direct = ego_layers(egos);
    REQUIRE(rebuilt.size() == direct.size());
    CHECK(hashtag_ring_csv(run_hashtags(rebuilt)).to_string() == hashtag_ring_csv(run_hashtags(direct)).to_string());
    CHECK(hashtag_ego_csv(run_hashtags(rebuilt)).to_string() == hashtag_ego_csv(run_hashtags(direct)).to_string());

    const auto layers = CsvTable::read(root / "static" / "layers.csv");
    CHECK(layers.header()[0] == "ego_id");
    CHECK(layers.header()[1] == "num_circles");
    CHECK(layers.header()[2] == "circle_1");
}
