#pragma once

#include "revbench/corpus.hpp"
#include "revbench/coverage.hpp"
#include "revbench/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace revbench::report {

struct RunConfig {
    std::filesystem::path corpus_dir;
    std::filesystem::path out_dir = "out";
    bool offline = true;
    std::filesystem::path cache_dir;  // bibliographic response cache
    std::filesystem::path data_dir;   // prompts / gold files; default_data_dir() when empty
    std::string judge_kind = "stub";  // "stub" or "http"
    std::string judge_endpoint;
    std::string judge_model;
    double requests_per_second = 1.0;
    std::string contact;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    corpus::PromptKind agreement_prompt = corpus::PromptKind::extended;
    std::vector<std::string> analyses = {"metrics",       "benchmark", "agreement",
                                         "distributions", "coverage",  "era"};

    bool analysis_enabled(const std::string& name) const;
};

// Plain key=value file, '#' comments. Unknown keys are rejected.
RunConfig load_config_file(const std::filesystem::path& path);

// Applies key=value overrides (same keys as the config file).
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

// Hash over the semantic configuration: seed, offline flag, judge identity,
// prompt selection and analysis list. Filesystem paths and the jobs knob are
// excluded so identical runs hash identically everywhere.
std::string config_hash(const RunConfig& config);

struct RunResult {
    std::vector<std::string> emitted;  // file names under out_dir
    std::vector<metrics::MetricsRow> rows;
};

// One generated review scored against the human atomic items of its paper,
// per dimension ("strength" or "weakness").
struct CoverageRow {
    std::string model;
    corpus::PromptKind prompt_kind = corpus::PromptKind::extended;
    std::string paper_id;
    std::string review_id;
    std::string dimension;
    std::size_t human_items = 0;
    std::size_t generated_items = 0;
    coverage::CoverageResult result;
};

// All coverage rows for the corpus, optionally restricted to one model
// and/or one year. Papers without human atoms in a dimension are skipped
// for that dimension (recall is undefined there).
std::vector<CoverageRow> coverage_rows(const corpus::Corpus& corpus, judge::Judge& judge,
                                       const std::string& model_filter = "",
                                       int year_filter = 0);

// Executes the selected analyses and writes every artifact (metrics.jsonl,
// benchmark_table.csv, agreement.csv, distributions.csv, coverage.csv,
// era.csv, manifest.json). All content is rendered before anything is
// written, so a failing analysis emits nothing.
RunResult run(const RunConfig& config);

} // namespace revbench::report
