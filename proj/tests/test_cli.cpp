#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "egonet/csv.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;
using egonet::CsvTable;
using egonet::testing::scratch_dir;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run egonet_cli(const std::string& args, const fs::path& work, const std::string& env = "") {
    const auto out = work / "stdout.txt";
    const auto err = work / "stderr.txt";
    const std::string cmd =
        env + " \"" EGONET_CLI_PATH "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("subcommands chain end to end") {
    const auto w = scratch_dir("cli_chain");
    const auto q = [&](const char* rel) { return "\"" + (w / rel).string() + "\""; };

    auto r = egonet_cli("synth --egos 8 --seed 5 --duration-years 3 --out " + q("corpus"), w);
    REQUIRE(r.status == 0);
    CHECK(fs::exists(w / "corpus" / "truth.csv"));

    r = egonet_cli("ingest-check --input " + q("corpus"), w);
    CHECK(r.status == 0);
    CHECK(r.out.rfind("user_id,tweets,social_tweets", 0) == 0);

    r = egonet_cli("classify-users --input " + q("corpus") + " --cap 3200 --eps 3.0 --min-pts 5 --out " +
                       q("assessments.csv"),
                   w);
    REQUIRE(r.status == 0);
    CHECK(CsvTable::read(w / "assessments.csv").rows().size() == 8);

    r = egonet_cli("static --input " + q("corpus") + " --population " + q("assessments.csv") +
                       " --bandwidth-quantile 0.3 --out-dir " + q("static"),
                   w);
    REQUIRE(r.status == 0);
    CHECK(CsvTable::read(w / "static" / "layers.csv").rows().size() == 8);

    r = egonet_cli("dynamic --input " + q("corpus") + " --population " + q("assessments.csv") +
                       " --width-days 365 --step-days 30 --out " + q("stability.csv") + " --trajectories " +
                       q("traj.csv") + " --align outer --jump-magnitude",
                   w);
    REQUIRE(r.status == 0);
    CHECK(CsvTable::read(w / "stability.csv").rows().size() == 40);
    CHECK(fs::exists(w / "traj.csv"));

    r = egonet_cli("hashtags --input " + q("corpus") + " --static-dir " + q("static") + " --out " + q("hashtags.csv"),
                   w);
    REQUIRE(r.status == 0);
    CHECK(CsvTable::read(w / "hashtags.csv").rows().size() == 5);
    CHECK(CsvTable::read(w / "hashtags_per_ego.csv").rows().size() == 8);

    r = egonet_cli("report --input " + q("corpus") + " --population " + q("assessments.csv") + " --out " + q("report"),
                   w);
    REQUIRE(r.status == 0);
    CHECK(fs::exists(w / "report" / "summary.csv"));

    r = egonet_cli("run-all --input " + q("corpus") + " --out " + q("all") + " --threads 3", w);
    REQUIRE(r.status == 0);
    // the standalone commands and run-all agree
    CHECK(slurp(w / "all" / "assessments.csv") == slurp(w / "assessments.csv"));
    CHECK(slurp(w / "all" / "static" / "layers.csv") == slurp(w / "static" / "layers.csv"));
    CHECK(slurp(w / "all" / "hashtags.csv") == slurp(w / "hashtags.csv"));
}

TEST_CASE("errors exit nonzero with a stage tag") {
    const auto w = scratch_dir("cli_errors");
    fs::create_directories(w / "empty");
    auto r = egonet_cli("run-all --input \"" + (w / "empty").string() + "\" --out \"" + (w / "out").string() + "\"", w);
    CHECK(r.status != 0);
    CHECK(r.err.find("[classify]") != std::string::npos);
    CHECK(slurp(w / "out" / "manifest.json").find("FAILED") != std::string::npos);

    r = egonet_cli("static --input \"" + (w / "nowhere").string() + "\" --population x.csv --out-dir s", w);
    CHECK(r.status != 0);
    CHECK(r.err.find("[static]") != std::string::npos);

    CHECK(egonet_cli("bogus", w).status != 0);
    CHECK(egonet_cli("synth --egos 0 --out x", w).status != 0);
    CHECK(egonet_cli("", w).status != 0);
}

TEST_CASE("logging goes to stderr and honours EGONET_LOG") {
    const auto w = scratch_dir("cli_log");
    REQUIRE(egonet_cli("synth --egos 2 --out \"" + (w / "c").string() + "\"", w).status == 0);
    const auto quiet = egonet_cli("ingest-check --input \"" + (w / "c").string() + "\"", w);
    const auto loud = egonet_cli("ingest-check --input \"" + (w / "c").string() + "\"", w, "EGONET_LOG=debug");
    CHECK(quiet.out == loud.out);
    CHECK(quiet.err.empty());
    CHECK(loud.err.find("archives ok") != std::string::npos);
}

TEST_CASE("help and version") {
    const auto w = scratch_dir("cli_help");
    const auto r = egonet_cli("--help", w);
    CHECK(r.status == 0);
    for (const char* sub : {"ingest-check", "classify-users", "static", "dynamic", "hashtags", "synth", "report",
                            "run-all"})
        CHECK_MESSAGE(r.out.find(sub) != std::string::npos, sub);
    CHECK(egonet_cli("--version", w).out.find("0.3.0") != std::string::npos);
}
