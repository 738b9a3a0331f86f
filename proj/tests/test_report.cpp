#include "revbench/report.hpp"

#include "revbench/csv.hpp"
#include "revbench/errors.hpp"
#include "revbench/judge.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace revbench;
using namespace revbench::report;

namespace {

const std::filesystem::path kFixture =
    std::filesystem::path(REVBENCH_TEST_DATA_DIR) / "fixture_corpus";
const std::filesystem::path kBibCache =
    std::filesystem::path(REVBENCH_TEST_DATA_DIR) / "bibcache";

std::filesystem::path temp_out(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("revbench_report_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path.string());
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

RunConfig fixture_config(const std::string& out_name) {
    RunConfig config;
    config.corpus_dir = kFixture;
    config.cache_dir = kBibCache;
    config.out_dir = temp_out(out_name);
    config.offline = true;
    config.judge_kind = "stub";
    config.jobs = 2;
    return config;
}

} // namespace

TEST_CASE("config file parsing with overrides") {
    auto dir = std::filesystem::temp_directory_path() / "revbench_config_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "run.conf";
    {
        std::ofstream out(path);
        out << "# comment\n";
        out << "corpus = /some/dir\n";
        out << "offline = true\n";
        out << "seed = 7\n";
        out << "analyses = metrics, era\n";
    }
    RunConfig config = load_config_file(path);
    CHECK(config.corpus_dir == "/some/dir");
    CHECK(config.offline);
    CHECK(config.seed == 7);
    CHECK(config.analyses == std::vector<std::string>{"metrics", "era"});

    apply_override(config, "seed", "9");
    CHECK(config.seed == 9);
    CHECK_THROWS_AS(apply_override(config, "bogus_key", "1"), ConfigError);
}

TEST_CASE("config hash covers semantics, not paths") {
    RunConfig a = fixture_config("hash_a");
    RunConfig b = fixture_config("hash_b");
    b.out_dir = "/completely/different";
    b.jobs = 16;
    CHECK(config_hash(a) == config_hash(b));
    b.seed = 99;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("full offline run emits every artifact") {
    RunConfig config = fixture_config("full");
    RunResult result = run(config);
    for (const char* name :
         {"metrics.jsonl", "benchmark_table.csv", "benchmark_table.json", "agreement.csv",
          "distributions.csv", "coverage.csv", "era.csv", "manifest.json"}) {
        CAPTURE(name);
        CHECK(std::filesystem::exists(config.out_dir / name));
    }
    CHECK(result.rows.size() == 9);
}

TEST_CASE("consecutive runs are byte-identical") {
    RunConfig first = fixture_config("repeat_a");
    RunConfig second = fixture_config("repeat_b");
    run(first);
    run(second);
    for (const char* name :
         {"metrics.jsonl", "benchmark_table.csv", "benchmark_table.json", "agreement.csv",
          "distributions.csv", "coverage.csv", "era.csv", "manifest.json"}) {
        CAPTURE(name);
        CHECK(slurp(first.out_dir / name) == slurp(second.out_dir / name));
    }
}

TEST_CASE("offline run with a missing cache dir is a config error") {
    RunConfig config = fixture_config("missing_cache");
    config.cache_dir = "/nonexistent/revbench/cache";
    CHECK_THROWS_AS(run(config), ConfigError);
    CHECK(!std::filesystem::exists(config.out_dir));  // nothing emitted
}

TEST_CASE("emitted csvs have header rows and consistent field counts") {
    RunConfig config = fixture_config("csv_shape");
    run(config);
    for (const char* name :
         {"benchmark_table.csv", "agreement.csv", "distributions.csv", "coverage.csv",
          "era.csv"}) {
        std::istringstream in(slurp(config.out_dir / name));
        std::string header;
        REQUIRE(std::getline(in, header));
        std::size_t columns = std::count(header.begin(), header.end(), ',');
        CHECK(columns > 0);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line == "\r") continue;
            CHECK_MESSAGE(std::count(line.begin(), line.end(), ',') == columns,
                          name << ": " << line);
        }
    }
}

TEST_CASE("coverage rows honor model and year filters") {
    auto corpus = revbench::corpus::load_corpus(kFixture);
    revbench::judge::StubJudge stub;

    auto all = coverage_rows(corpus, stub);
    CHECK(!all.empty());

    auto year_2023 = coverage_rows(corpus, stub, "", 2023);
    CHECK(!year_2023.empty());
    for (const auto& row : year_2023) CHECK(row.paper_id == "p_iclr23");

    auto other_model = coverage_rows(corpus, stub, "no-such-model", 0);
    CHECK(other_model.empty());

    for (const auto& row : all) {
        CHECK(row.human_items > 0);
        if (row.result.atomic_recall) {
            CHECK(*row.result.atomic_recall >= 0.0);
            CHECK(*row.result.atomic_recall <= 1.0);
        }
        CHECK(row.result.match_matrix.size() == row.human_items);
    }
}

TEST_CASE("csv writer quotes per RFC 4180") {
    CHECK(CsvWriter::escape("plain") == "plain");
    CHECK(CsvWriter::escape("with,comma") == "\"with,comma\"");
    CHECK(CsvWriter::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(CsvWriter::escape("line\nbreak") == "\"line\nbreak\"");

    std::ostringstream out;
    CsvWriter csv(out);
    csv.row({"a", "b,c", "d\"e\""});
    CHECK(out.str() == "a,\"b,c\",\"d\"\"e\"\"\"\r\n");
}

TEST_CASE("selected analyses limit the outputs") {
    RunConfig config = fixture_config("selected");
    config.analyses = {"metrics"};
    run(config);
    CHECK(std::filesystem::exists(config.out_dir / "metrics.jsonl"));
    CHECK(!std::filesystem::exists(config.out_dir / "coverage.csv"));
    CHECK(std::filesystem::exists(config.out_dir / "manifest.json"));
}
