// revbench: batch metrics over peer-review corpora.
//
// Subcommands mirror the analysis stages: ingest validates a corpus,
// metrics/agreement/coverage/stats/verify run one stage, report and all
// run the full pipeline and emit every table.

#include "revbench/agreement.hpp"
#include "revbench/bib_verify.hpp"
#include "revbench/corpus.hpp"
#include "revbench/coverage.hpp"
#include "revbench/csv.hpp"
#include "revbench/errors.hpp"
#include "revbench/extraction.hpp"
#include "revbench/judge.hpp"
#include "revbench/metrics.hpp"
#include "revbench/report.hpp"
#include "revbench/stats.hpp"
#include "revbench/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;
using revbench::report::RunConfig;

struct CommonFlags {
    std::string config_file;
    std::vector<std::string> overrides;  // key=value pairs collected from flags
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_file, "key=value config file");
    auto push = [&flags](const std::string& key) {
        return [&flags, key](const std::string& value) {
            flags.overrides.push_back(key + "=" + value);
        };
    };
    cmd->add_option_function<std::string>("--corpus", push("corpus"), "corpus directory");
    cmd->add_option_function<std::string>("--out", push("out"), "output directory");
    cmd->add_option_function<std::string>("--cache-dir", push("cache_dir"),
                                          "bibliographic cache directory");
    cmd->add_option_function<std::string>("--data-dir", push("data_dir"),
                                          "prompt/gold data directory");
    cmd->add_option_function<std::string>("--judge", push("judge"), "judge kind: stub or http");
    cmd->add_option_function<std::string>("--judge-endpoint", push("judge_endpoint"),
                                          "chat-completion endpoint URL");
    cmd->add_option_function<std::string>("--judge-model", push("judge_model"),
                                          "judge model name");
    cmd->add_option_function<std::string>("--jobs", push("jobs"), "worker threads");
    cmd->add_option_function<std::string>("--seed", push("seed"), "sampling seed");
    cmd->add_option_function<std::string>("--contact", push("contact"),
                                          "contact string sent to bibliographic APIs");
    cmd->add_flag_function(
        "--offline", [&flags](std::int64_t) { flags.overrides.push_back("offline=true"); },
        "answer bibliographic queries from the cache only");
    cmd->add_flag_function(
        "--live", [&flags](std::int64_t) { flags.overrides.push_back("offline=false"); },
        "allow live bibliographic/judge network access");
}

RunConfig resolve_config(const CommonFlags& flags) {
    RunConfig config;
    if (!flags.config_file.empty())
        config = revbench::report::load_config_file(flags.config_file);
    for (const std::string& entry : flags.overrides) {
        std::size_t eq = entry.find('=');
        revbench::report::apply_override(config, entry.substr(0, eq), entry.substr(eq + 1));
    }
    return config;
}

int fail(const std::string& stage, const std::exception& e) {
    json error;
    error["error"]["stage"] = stage;
    error["error"]["message"] = e.what();
    std::cerr << error.dump(2) << std::endl;
    return 1;
}

std::unique_ptr<revbench::judge::Judge> make_judge(const RunConfig& config) {
    if (config.judge_kind == "stub") return std::make_unique<revbench::judge::StubJudge>();
    if (config.judge_kind == "http") {
        revbench::judge::JudgeConfig jc;
        jc.endpoint = config.judge_endpoint;
        jc.model = config.judge_model;
        if (!config.data_dir.empty()) jc.prompts_dir = config.data_dir / "prompts";
        return std::make_unique<revbench::judge::LlmJudge>(
            jc, revbench::judge::make_http_chat_transport());
    }
    throw revbench::ConfigError("unknown judge kind: " + config.judge_kind);
}

int cmd_ingest(const RunConfig& config) {
    revbench::corpus::Corpus corpus = revbench::corpus::load_corpus(config.corpus_dir);
    std::size_t flagged = 0;
    for (const auto& review : corpus.reviews)
        if (review.score_missing) ++flagged;
    json summary;
    summary["papers"] = corpus.papers.size();
    summary["reviews"] = corpus.reviews.size();
    summary["scales"] = corpus.scales.size();
    summary["score_missing"] = flagged;
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int cmd_extract(const RunConfig& config, const std::string& kind) {
    revbench::corpus::Corpus corpus = revbench::corpus::load_corpus(config.corpus_dir);
    for (const auto& review : corpus.reviews) {
        if (kind == "xref") {
            for (const auto& mention : revbench::extraction::extract_xrefs(review.full_text)) {
                json j;
                j["review_id"] = review.review_id;
                j["kind"] = std::string(revbench::extraction::to_string(mention.kind));
                j["matched_text"] = mention.matched_text;
                j["begin"] = mention.begin;
                j["end"] = mention.end;
                std::cout << j.dump() << "\n";
            }
        } else {
            for (const auto& rec : revbench::extraction::extract_citations(review.full_text)) {
                json j;
                j["review_id"] = review.review_id;
                j["style"] = std::string(revbench::extraction::to_string(rec.style));
                j["authors"] = rec.authors;
                j["title"] = rec.title ? json(*rec.title) : json(nullptr);
                j["year"] = rec.year;
                j["raw"] = rec.raw;
                std::cout << j.dump() << "\n";
            }
        }
    }
    return 0;
}

int cmd_verify(const RunConfig& config) {
    revbench::corpus::Corpus corpus = revbench::corpus::load_corpus(config.corpus_dir);
    revbench::bib::VerifierConfig vc;
    vc.offline = config.offline;
    vc.cache_dir = config.cache_dir;
    vc.requests_per_second = config.requests_per_second;
    vc.contact = config.contact;
    revbench::bib::Verifier verifier(vc, revbench::make_live_transport());

    std::vector<revbench::bib::ReviewCitationCounts> per_review;
    for (const auto& review : corpus.reviews) {
        auto citations = revbench::extraction::extract_citations(review.full_text);
        revbench::bib::ReviewCitationCounts counts;
        counts.total = citations.size();
        for (const auto& citation : citations) {
            auto result = verifier.verify(citation);
            json j;
            j["review_id"] = review.review_id;
            j["raw"] = citation.raw;
            j["status"] = std::string(revbench::bib::to_string(result.status));
            if (result.matched_source)
                j["matched_source"] =
                    std::string(revbench::bib::to_string(*result.matched_source));
            if (result.matched_title) j["matched_title"] = *result.matched_title;
            j["similarity"] = result.similarity;
            std::cout << j.dump() << "\n";
            if (result.status == revbench::bib::VerifyStatus::verified) ++counts.verified;
        }
        per_review.push_back(counts);
    }
    auto stats = revbench::bib::citation_stats(per_review);
    json summary;
    summary["verified_mean"] = stats.verified_mean;
    summary["total_mean"] = stats.total_mean;
    std::cerr << summary.dump(2) << std::endl;
    return 0;
}

int cmd_coverage(const RunConfig& config, const std::string& model_filter, int year_filter) {
    revbench::corpus::Corpus corpus = revbench::corpus::load_corpus(config.corpus_dir);
    std::unique_ptr<revbench::judge::Judge> judge = make_judge(config);
    std::vector<revbench::report::CoverageRow> rows =
        revbench::report::coverage_rows(corpus, *judge, model_filter, year_filter);

    for (const auto& row : rows) {
        json j;
        j["model"] = row.model;
        j["prompt_kind"] = std::string(revbench::corpus::to_string(row.prompt_kind));
        j["paper_id"] = row.paper_id;
        j["review_id"] = row.review_id;
        j["dimension"] = row.dimension;
        j["human_items"] = row.human_items;
        j["generated_items"] = row.generated_items;
        auto opt = [](const std::optional<double>& v) {
            return v ? json(*v) : json(nullptr);
        };
        j["atomic_recall"] = opt(row.result.atomic_recall);
        j["precision"] = opt(row.result.precision);
        j["mapping_density"] = opt(row.result.mapping_density);
        j["compaction_ratio"] = opt(row.result.compaction_ratio);
        json matrix = json::array();
        for (const auto& matrix_row : row.result.match_matrix) {
            json cells = json::array();
            for (bool cell : matrix_row) cells.push_back(cell ? 1 : 0);
            matrix.push_back(cells);
        }
        j["match_matrix"] = matrix;
        std::cout << j.dump() << "\n";
    }

    // Aggregate table (mean +/- std per model/prompt/dimension) on stderr so
    // the stdout stream stays pure JSONL.
    struct Acc {
        std::vector<double> recall, precision, density, compaction;
    };
    std::map<std::tuple<std::string, int, std::string>, Acc> groups;
    for (const auto& row : rows) {
        Acc& acc = groups[{row.model, int(row.prompt_kind), row.dimension}];
        if (row.result.atomic_recall) acc.recall.push_back(*row.result.atomic_recall);
        if (row.result.precision) acc.precision.push_back(*row.result.precision);
        if (row.result.mapping_density) acc.density.push_back(*row.result.mapping_density);
        if (row.result.compaction_ratio)
            acc.compaction.push_back(*row.result.compaction_ratio);
    }
    revbench::CsvWriter csv(std::cerr);
    csv.row({"model", "prompt_kind", "dimension", "recall_mean", "recall_std",
             "precision_mean", "precision_std", "density_mean", "density_std",
             "compaction_mean", "compaction_std", "n"});
    auto mean_cell = [](const std::vector<double>& v) {
        return v.empty() ? std::string() : revbench::csv_num(revbench::stats::mean(v), 4);
    };
    auto std_cell = [](const std::vector<double>& v) {
        return v.size() < 2 ? std::string()
                            : revbench::csv_num(revbench::stats::sample_std(v), 4);
    };
    for (const auto& [key, acc] : groups) {
        csv.row({std::get<0>(key),
                 std::string(revbench::corpus::to_string(
                     static_cast<revbench::corpus::PromptKind>(std::get<1>(key)))),
                 std::get<2>(key), mean_cell(acc.recall), std_cell(acc.recall),
                 mean_cell(acc.precision), std_cell(acc.precision), mean_cell(acc.density),
                 std_cell(acc.density), mean_cell(acc.compaction), std_cell(acc.compaction),
                 std::to_string(acc.recall.size())});
    }
    return 0;
}

int cmd_agreement(const RunConfig& config, const std::string& venue_name,
                  const std::string& with_model, const std::string& prompt_name,
                  bool as_json) {
    using revbench::corpus::Venue;
    revbench::corpus::Corpus corpus = revbench::corpus::load_corpus(config.corpus_dir);
    std::vector<Venue> venues;
    if (venue_name.empty()) venues = {Venue::ICLR, Venue::NeurIPS};
    else venues = {revbench::corpus::venue_from_string(venue_name)};

    revbench::CsvWriter csv(std::cout);
    if (!as_json) csv.row({"conference", "year", "alpha_h", "alpha_hl", "delta"});
    for (Venue venue : venues) {
        auto human = revbench::agreement::alpha_by_year(corpus, venue);
        std::optional<revbench::agreement::AlphaResult> augmented;
        if (!with_model.empty()) {
            revbench::agreement::PanelAugmentation aug;
            aug.model = with_model;
            aug.prompt_kind = revbench::corpus::prompt_kind_from_string(
                prompt_name.empty() ? "extended" : prompt_name);
            augmented = revbench::agreement::alpha_by_year(corpus, venue, aug);
        }
        for (const auto& [year, alpha_h] : human.per_year) {
            std::optional<double> alpha_hl, delta;
            if (augmented) {
                auto it = augmented->per_year.find(year);
                if (it != augmented->per_year.end()) alpha_hl = it->second;
                if (alpha_h && alpha_hl) delta = *alpha_hl - *alpha_h;
            }
            if (as_json) {
                json j;
                j["conference"] = std::string(revbench::corpus::to_string(venue));
                j["year"] = year;
                j["alpha_h"] = alpha_h ? json(*alpha_h) : json(nullptr);
                j["alpha_hl"] = alpha_hl ? json(*alpha_hl) : json(nullptr);
                j["delta"] = delta ? json(*delta) : json(nullptr);
                std::cout << j.dump() << "\n";
            } else {
                csv.row({std::string(revbench::corpus::to_string(venue)),
                         std::to_string(year),
                         alpha_h ? revbench::csv_num(*alpha_h, 4) : "",
                         alpha_hl ? revbench::csv_num(*alpha_hl, 4) : "",
                         delta ? revbench::csv_num(*delta, 4) : ""});
            }
        }
    }
    return 0;
}

int cmd_stats_tv(const RunConfig& config, bool as_json) {
    using revbench::corpus::ScaleKind;
    revbench::corpus::Corpus corpus = revbench::corpus::load_corpus(config.corpus_dir);

    // Rating values per (source, prompt, support signature).
    std::map<std::string, std::map<std::string, std::vector<int>>> values;
    for (const auto& review : corpus.reviews) {
        if (!review.numeric_rating) continue;
        const auto* paper = corpus.find_paper(review.paper_id);
        const auto* scale = corpus.find_scale(paper->venue, paper->year, ScaleKind::rating);
        if (scale == nullptr) continue;
        std::string support = std::to_string(scale->min_value()) + "-" +
                              std::to_string(scale->max_value());
        std::string group = revbench::corpus::to_string(review.source) + "/" +
                            std::string(revbench::corpus::to_string(review.prompt_kind));
        values[support][group].push_back(*review.numeric_rating);
    }

    revbench::CsvWriter csv(std::cout);
    if (!as_json) csv.row({"support", "group", "score", "diff_pp", "sum_abs_pp"});
    for (const auto& [support, groups] : values) {
        auto human_it = groups.find("human/none");
        if (human_it == groups.end()) continue;
        int lo = std::stoi(support.substr(0, support.find('-')));
        int hi = std::stoi(support.substr(support.find('-') + 1));
        std::vector<int> support_values;
        for (int v = lo; v <= hi; ++v) support_values.push_back(v);
        auto human = revbench::stats::make_distribution(human_it->second, support_values);
        for (const auto& [group, group_values] : groups) {
            if (group == "human/none") continue;
            auto dist = revbench::stats::make_distribution(group_values, support_values);
            auto diff = revbench::stats::tv_diff(dist, human);
            if (as_json) {
                // Full precision in JSON; the CSV rounds to 2 decimals.
                json j;
                j["support"] = support;
                j["group"] = group;
                j["per_bin_pp"] = diff.per_bin_pp;
                j["sum_abs_pp"] = diff.sum_abs_pp;
                std::cout << j.dump() << "\n";
                continue;
            }
            for (std::size_t i = 0; i < support_values.size(); ++i) {
                csv.row({support, group, std::to_string(support_values[i]),
                         revbench::csv_num(diff.per_bin_pp[i], 2),
                         revbench::csv_num(diff.sum_abs_pp, 2)});
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch evaluation metrics for peer-review corpora"};
    app.set_version_flag("--version", std::string(revbench::kVersion));
    app.require_subcommand(1);

    CommonFlags flags;

    CLI::App* ingest = app.add_subcommand("ingest", "load and validate a corpus");
    add_common_flags(ingest, flags);

    CLI::App* metrics_cmd = app.add_subcommand("metrics", "compute per-review metric rows");
    add_common_flags(metrics_cmd, flags);

    CLI::App* agreement_cmd =
        app.add_subcommand("agreement", "Krippendorff alpha tables per venue/year");
    add_common_flags(agreement_cmd, flags);
    std::string venue_name, with_model, prompt_name;
    bool agreement_json = false;
    agreement_cmd->add_option("--venue", venue_name, "ICLR or NeurIPS");
    agreement_cmd->add_option("--with-model", with_model, "augment panels with this model");
    agreement_cmd->add_option("--prompt", prompt_name, "prompt kind for the augmented panel");
    agreement_cmd->add_flag("--json", agreement_json, "emit JSONL instead of CSV");

    CLI::App* coverage_cmd =
        app.add_subcommand("coverage", "atomic coverage of human reviews by generated ones");
    add_common_flags(coverage_cmd, flags);
    std::string coverage_model;
    int coverage_year = 0;
    coverage_cmd->add_option("--model", coverage_model, "restrict to one model");
    coverage_cmd->add_option("--year", coverage_year, "restrict to one year");

    CLI::App* stats_cmd = app.add_subcommand("stats", "statistical comparisons");
    CLI::App* era_cmd = stats_cmd->add_subcommand("era-compare", "pre/post era comparison");
    add_common_flags(era_cmd, flags);
    CLI::App* tv_cmd =
        stats_cmd->add_subcommand("tv", "total-variation differences between distributions");
    add_common_flags(tv_cmd, flags);
    std::string tv_against = "human";
    bool tv_json = false;
    tv_cmd->add_option("--against", tv_against, "baseline group (only 'human' is supported)");
    tv_cmd->add_flag("--json", tv_json, "emit JSONL instead of CSV");

    CLI::App* verify_cmd = app.add_subcommand("verify", "verify extracted citations");
    add_common_flags(verify_cmd, flags);

    CLI::App* extract_cmd = app.add_subcommand("extract", "dump extraction matches as JSONL");
    add_common_flags(extract_cmd, flags);
    std::string extract_kind = "xref";
    extract_cmd->add_option("--kind", extract_kind, "xref or citation")
        ->check(CLI::IsMember({"xref", "citation"}));

    CLI::App* report_cmd = app.add_subcommand("report", "run selected analyses, emit tables");
    add_common_flags(report_cmd, flags);
    std::string analyses;
    report_cmd->add_option("--analyses", analyses, "comma-separated analysis list");

    CLI::App* all_cmd = app.add_subcommand("all", "run every analysis");
    add_common_flags(all_cmd, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!analyses.empty()) flags.overrides.push_back("analyses=" + analyses);
        RunConfig config = resolve_config(flags);

        if (ingest->parsed()) return cmd_ingest(config);
        if (extract_cmd->parsed()) return cmd_extract(config, extract_kind);
        if (verify_cmd->parsed()) return cmd_verify(config);
        if (agreement_cmd->parsed())
            return cmd_agreement(config, venue_name, with_model, prompt_name, agreement_json);
        if (tv_cmd->parsed()) return cmd_stats_tv(config, tv_json);

        if (metrics_cmd->parsed()) {
            config.analyses = {"metrics"};
            auto result = revbench::report::run(config);
            std::cout << "emitted " << result.emitted.size() << " file(s) to "
                      << config.out_dir.string() << std::endl;
            return 0;
        }
        if (era_cmd->parsed()) {
            config.analyses = {"era"};
            auto result = revbench::report::run(config);
            std::cout << "emitted " << result.emitted.size() << " file(s) to "
                      << config.out_dir.string() << std::endl;
            return 0;
        }
        if (coverage_cmd->parsed())
            return cmd_coverage(config, coverage_model, coverage_year);
        if (report_cmd->parsed() || all_cmd->parsed()) {
            if (all_cmd->parsed())
                config.analyses = {"metrics",       "benchmark", "agreement",
                                   "distributions", "coverage",  "era"};
            auto result = revbench::report::run(config);
            std::cout << "emitted " << result.emitted.size() << " file(s) to "
                      << config.out_dir.string() << std::endl;
            return 0;
        }
    } catch (const std::exception& e) {
        return fail(app.get_subcommands().empty() ? "cli"
                                                  : app.get_subcommands()[0]->get_name(),
                    e);
    }
    return 0;
}
