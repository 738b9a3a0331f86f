#include "revbench/report.hpp"

#include "revbench/agreement.hpp"
#include "revbench/coverage.hpp"
#include "revbench/csv.hpp"
#include "revbench/errors.hpp"
#include "revbench/sha256.hpp"
#include "revbench/version.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace revbench::report {

namespace {

using ordered_json = nlohmann::ordered_json;
using corpus::PromptKind;
using corpus::Source;
using corpus::Venue;
using metrics::MetricsRow;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool parse_bool(const std::string& value) {
    std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected boolean, got '" + value + "'");
}

std::string opt_cell(const std::optional<double>& v, int decimals) {
    return v ? csv_num(*v, decimals) : std::string();
}

// Group identity string used across the emitted tables.
std::string source_name(const Source& s) { return corpus::to_string(s); }

struct GroupKey {
    Source source;
    PromptKind prompt;
    bool operator<(const GroupKey& other) const {
        if (source.human != other.source.human) return source.human;
        if (source.model != other.source.model) return source.model < other.source.model;
        return static_cast<int>(prompt) < static_cast<int>(other.prompt);
    }
};

std::vector<std::string> model_names(const corpus::Corpus& corpus) {
    std::set<std::string> names;
    for (const corpus::ReviewRecord& review : corpus.reviews)
        if (!review.source.human) names.insert(review.source.model);
    return {names.begin(), names.end()};
}

std::string render_metrics_jsonl(std::span<const MetricsRow> rows) {
    std::ostringstream out;
    for (const MetricsRow& row : rows) {
        ordered_json j;
        j["review_id"] = row.review_id;
        j["source"] = source_name(row.source);
        j["prompt_kind"] = std::string(corpus::to_string(row.prompt_kind));
        j["venue"] = std::string(corpus::to_string(row.venue));
        j["year"] = row.year;
        j["tkc"] = row.tkc;
        j["ttr"] = row.ttr ? ordered_json(*row.ttr) : ordered_json(nullptr);
        j["fre"] = row.fre ? ordered_json(*row.fre) : ordered_json(nullptr);
        j["fkg"] = row.fkg ? ordered_json(*row.fkg) : ordered_json(nullptr);
        j["xref_count"] = row.xref_count;
        j["citations_total"] = row.citations_total;
        j["citations_verified"] =
            row.citations_verified ? ordered_json(*row.citations_verified) : ordered_json(nullptr);
        j["math_engaged"] =
            row.math_engaged ? ordered_json(*row.math_engaged) : ordered_json(nullptr);
        j["numeric_rating"] =
            row.numeric_rating ? ordered_json(*row.numeric_rating) : ordered_json(nullptr);
        j["numeric_confidence"] = row.numeric_confidence ? ordered_json(*row.numeric_confidence)
                                                         : ordered_json(nullptr);
        out << j.dump() << "\n";
    }
    return out.str();
}

// Per-paper math-engagement pairs for one model/prompt against the human
// reviews of the same paper: engaged means any review in the panel engaged.
std::vector<std::pair<bool, bool>> math_pairs(const corpus::Corpus& corpus,
                                              std::span<const MetricsRow> rows, Venue venue,
                                              const std::string& model, PromptKind prompt) {
    std::map<std::string, std::pair<std::optional<bool>, std::optional<bool>>> by_paper;
    std::map<std::string, const corpus::ReviewRecord*> review_index;
    for (const corpus::ReviewRecord& review : corpus.reviews)
        review_index[review.review_id] = &review;
    for (const MetricsRow& row : rows) {
        if (row.venue != venue || !row.math_engaged) continue;
        const corpus::ReviewRecord* review = review_index.at(row.review_id);
        auto& slot = by_paper[review->paper_id];
        if (row.source.human) {
            slot.first = slot.first.value_or(false) || *row.math_engaged;
        } else if (row.source.model == model && row.prompt_kind == prompt) {
            slot.second = slot.second.value_or(false) || *row.math_engaged;
        }
    }
    std::vector<std::pair<bool, bool>> pairs;
    for (const auto& [paper_id, flags] : by_paper) {
        if (flags.first && flags.second) pairs.emplace_back(*flags.first, *flags.second);
    }
    return pairs;
}

struct BenchmarkLine {
    metrics::GroupAggregate group;
    std::optional<double> alpha_iclr, alpha_neurips;
    std::optional<double> ppp_iclr, ppn_iclr, ppp_neurips, ppn_neurips;
};

std::vector<BenchmarkLine> benchmark_lines(const corpus::Corpus& corpus,
                                           std::span<const MetricsRow> rows) {
    std::optional<double> alpha_h_iclr =
        agreement::alpha_by_year(corpus, Venue::ICLR).mean_alpha;
    std::optional<double> alpha_h_neurips =
        agreement::alpha_by_year(corpus, Venue::NeurIPS).mean_alpha;

    std::vector<BenchmarkLine> out;
    for (metrics::GroupAggregate& group : metrics::aggregate_table(rows)) {
        BenchmarkLine line;
        if (group.source.human) {
            line.alpha_iclr = alpha_h_iclr;
            line.alpha_neurips = alpha_h_neurips;
        } else {
            agreement::PanelAugmentation aug{group.source.model, group.prompt_kind};
            line.alpha_iclr = agreement::alpha_by_year(corpus, Venue::ICLR, aug).mean_alpha;
            line.alpha_neurips =
                agreement::alpha_by_year(corpus, Venue::NeurIPS, aug).mean_alpha;
            for (Venue venue : {Venue::ICLR, Venue::NeurIPS}) {
                auto pairs = math_pairs(corpus, rows, venue, group.source.model,
                                        group.prompt_kind);
                agreement::ConditionalMathRates rates =
                    agreement::conditional_math_rates(pairs);
                if (venue == Venue::ICLR) {
                    line.ppp_iclr = rates.p_pos_pos;
                    line.ppn_iclr = rates.p_pos_neg;
                } else {
                    line.ppp_neurips = rates.p_pos_pos;
                    line.ppn_neurips = rates.p_pos_neg;
                }
            }
        }
        line.group = std::move(group);
        out.push_back(std::move(line));
    }
    return out;
}

std::string render_benchmark_csv(const std::vector<BenchmarkLine>& lines) {
    std::ostringstream buf;
    CsvWriter csv(buf);
    csv.row({"source", "prompt_kind", "n", "tkc_mean", "ttr_mean", "fre_mean", "fkg_mean",
             "cit_verified_mean", "cit_total_mean", "xref_mean", "math_rate", "alpha_iclr",
             "alpha_neurips", "p_pos_pos_iclr", "p_pos_neg_iclr", "p_pos_pos_neurips",
             "p_pos_neg_neurips"});
    for (const BenchmarkLine& line : lines) {
        const metrics::GroupAggregate& group = line.group;
        csv.row({source_name(group.source), std::string(corpus::to_string(group.prompt_kind)),
                 std::to_string(group.n), opt_cell(group.tkc.mean, 1),
                 opt_cell(group.ttr.mean, 4), opt_cell(group.fre.mean, 2),
                 opt_cell(group.fkg.mean, 2), opt_cell(group.citations_verified.mean, 4),
                 opt_cell(group.citations_total.mean, 4), opt_cell(group.xref.mean, 2),
                 opt_cell(group.math.mean, 4), opt_cell(line.alpha_iclr, 4),
                 opt_cell(line.alpha_neurips, 4), opt_cell(line.ppp_iclr, 4),
                 opt_cell(line.ppn_iclr, 4), opt_cell(line.ppp_neurips, 4),
                 opt_cell(line.ppn_neurips, 4)});
    }
    return buf.str();
}

// Full-precision JSON twin of the CSV table, means paired with sample
// standard deviations per field.
std::string render_benchmark_json(const std::vector<BenchmarkLine>& lines) {
    auto stat = [](const metrics::FieldStat& s) {
        ordered_json j;
        j["mean"] = s.mean ? ordered_json(*s.mean) : ordered_json(nullptr);
        j["std"] = s.std_dev ? ordered_json(*s.std_dev) : ordered_json(nullptr);
        j["n"] = s.n;
        return j;
    };
    auto opt = [](const std::optional<double>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    std::ostringstream out;
    for (const BenchmarkLine& line : lines) {
        const metrics::GroupAggregate& group = line.group;
        ordered_json j;
        j["source"] = source_name(group.source);
        j["prompt_kind"] = std::string(corpus::to_string(group.prompt_kind));
        j["n"] = group.n;
        j["tkc"] = stat(group.tkc);
        j["ttr"] = stat(group.ttr);
        j["fre"] = stat(group.fre);
        j["fkg"] = stat(group.fkg);
        j["citations_verified"] = stat(group.citations_verified);
        j["citations_total"] = stat(group.citations_total);
        j["xref"] = stat(group.xref);
        j["math"] = stat(group.math);
        j["rating"] = stat(group.rating);
        j["confidence"] = stat(group.confidence);
        j["alpha_iclr"] = opt(line.alpha_iclr);
        j["alpha_neurips"] = opt(line.alpha_neurips);
        j["p_pos_pos_iclr"] = opt(line.ppp_iclr);
        j["p_pos_neg_iclr"] = opt(line.ppn_iclr);
        j["p_pos_pos_neurips"] = opt(line.ppp_neurips);
        j["p_pos_neg_neurips"] = opt(line.ppn_neurips);
        out << j.dump() << "\n";
    }
    return out.str();
}

std::string render_agreement_csv(const corpus::Corpus& corpus, PromptKind prompt) {
    std::ostringstream buf;
    CsvWriter csv(buf);
    csv.row({"model", "prompt_kind", "conference", "year", "alpha_h", "alpha_hl", "delta"});
    for (const std::string& model : model_names(corpus)) {
        for (Venue venue : {Venue::ICLR, Venue::NeurIPS}) {
            agreement::AlphaResult human = agreement::alpha_by_year(corpus, venue);
            agreement::AlphaResult augmented = agreement::alpha_by_year(
                corpus, venue, agreement::PanelAugmentation{model, prompt});
            std::set<int> years;
            for (const auto& [year, _] : human.per_year) years.insert(year);
            for (const auto& [year, _] : augmented.per_year) years.insert(year);
            for (int year : years) {
                std::optional<double> alpha_h, alpha_hl, delta;
                if (auto it = human.per_year.find(year); it != human.per_year.end())
                    alpha_h = it->second;
                if (auto it = augmented.per_year.find(year); it != augmented.per_year.end())
                    alpha_hl = it->second;
                if (alpha_h && alpha_hl) delta = *alpha_hl - *alpha_h;
                csv.row({model, std::string(corpus::to_string(prompt)),
                         std::string(corpus::to_string(venue)), std::to_string(year),
                         opt_cell(alpha_h, 4), opt_cell(alpha_hl, 4), opt_cell(delta, 4)});
            }
        }
    }
    return buf.str();
}

std::string render_distributions_csv(const corpus::Corpus& corpus,
                                     std::span<const MetricsRow> rows) {
    std::ostringstream buf;
    CsvWriter csv(buf);
    csv.row({"source", "prompt_kind", "support", "score", "mass", "n"});

    // Ratings are pooled per scale signature so 1-10 and 1-6 venues stay
    // separate columns of the report.
    std::map<GroupKey, std::map<std::string, std::vector<int>>> grouped;
    for (const MetricsRow& row : rows) {
        if (!row.numeric_rating) continue;
        const corpus::RatingScale* scale =
            corpus.find_scale(row.venue, row.year, corpus::ScaleKind::rating);
        if (scale == nullptr) continue;
        std::string signature =
            std::to_string(scale->min_value()) + "-" + std::to_string(scale->max_value());
        grouped[{row.source, row.prompt_kind}][signature].push_back(*row.numeric_rating);
    }
    for (const auto& [key, by_support] : grouped) {
        for (const auto& [signature, values] : by_support) {
            int lo = std::stoi(signature.substr(0, signature.find('-')));
            int hi = std::stoi(signature.substr(signature.find('-') + 1));
            std::vector<int> support;
            for (int v = lo; v <= hi; ++v) support.push_back(v);
            stats::Distribution dist = stats::make_distribution(values, support);
            for (std::size_t i = 0; i < dist.support.size(); ++i) {
                csv.row({source_name(key.source),
                         std::string(corpus::to_string(key.prompt)), signature,
                         std::to_string(dist.support[i]), csv_num(dist.mass[i], 4),
                         std::to_string(dist.n)});
            }
        }
    }
    return buf.str();
}

struct CoverageAccumulator {
    std::vector<double> recall, precision, density, compaction;
};

void emit_coverage_rows(CsvWriter& csv, const std::string& model, PromptKind prompt,
                        const std::string& dimension, const CoverageAccumulator& acc) {
    auto cell_mean = [](const std::vector<double>& v) -> std::string {
        return v.empty() ? std::string() : csv_num(stats::mean(v), 4);
    };
    auto cell_std = [](const std::vector<double>& v) -> std::string {
        return v.size() < 2 ? std::string() : csv_num(stats::sample_std(v), 4);
    };
    csv.row({model, std::string(corpus::to_string(prompt)), dimension,
             cell_mean(acc.recall), cell_std(acc.recall), cell_mean(acc.precision),
             cell_std(acc.precision), cell_mean(acc.density), cell_std(acc.density),
             cell_mean(acc.compaction), cell_std(acc.compaction),
             std::to_string(acc.recall.size())});
}

std::string render_coverage_csv(const std::vector<CoverageRow>& rows) {
    std::ostringstream buf;
    CsvWriter csv(buf);
    csv.row({"model", "prompt_kind", "dimension", "recall_mean", "recall_std",
             "precision_mean", "precision_std", "density_mean", "density_std",
             "compaction_mean", "compaction_std", "n"});

    std::map<std::pair<GroupKey, std::string>, CoverageAccumulator> groups;
    for (const CoverageRow& row : rows) {
        CoverageAccumulator& acc =
            groups[{GroupKey{corpus::Source::make_model(row.model), row.prompt_kind},
                    row.dimension}];
        if (row.result.atomic_recall) acc.recall.push_back(*row.result.atomic_recall);
        if (row.result.precision) acc.precision.push_back(*row.result.precision);
        if (row.result.mapping_density) acc.density.push_back(*row.result.mapping_density);
        if (row.result.compaction_ratio)
            acc.compaction.push_back(*row.result.compaction_ratio);
    }
    for (const auto& [key, acc] : groups) {
        emit_coverage_rows(csv, key.first.source.model, key.first.prompt, key.second, acc);
    }
    return buf.str();
}

std::string render_era_csv(std::span<const MetricsRow> rows) {
    std::ostringstream buf;
    CsvWriter csv(buf);
    csv.row({"venue", "metric", "pre_mean", "post_mean", "p_value", "significant_0_05"});

    std::vector<MetricsRow> human_rows;
    for (const MetricsRow& row : rows)
        if (row.source.human) human_rows.push_back(row);

    struct Metric {
        const char* name;
        metrics::MetricSelector selector;
    };
    const std::vector<Metric> metric_list = {
        {"tkc", [](const MetricsRow& r) { return std::optional<double>(double(r.tkc)); }},
        {"ttr", [](const MetricsRow& r) { return r.ttr; }},
        {"fre", [](const MetricsRow& r) { return r.fre; }},
        {"fkg", [](const MetricsRow& r) { return r.fkg; }},
        {"xref", [](const MetricsRow& r) { return std::optional<double>(double(r.xref_count)); }},
    };
    for (Venue venue : {Venue::ICLR, Venue::NeurIPS}) {
        for (const Metric& metric : metric_list) {
            try {
                stats::EraComparison cmp =
                    metrics::era_compare_metric(human_rows, venue, metric.selector);
                csv.row({std::string(corpus::to_string(venue)), metric.name,
                         csv_num(cmp.pre_mean, 4), csv_num(cmp.post_mean, 4),
                         csv_num(cmp.p_value, 6), cmp.significant_at_0_05 ? "yes" : "no"});
            } catch (const EmptyInputError&) {
                csv.row({std::string(corpus::to_string(venue)), metric.name, "", "", "", ""});
            }
        }
    }
    return buf.str();
}

} // namespace

bool RunConfig::analysis_enabled(const std::string& name) const {
    return std::find(analyses.begin(), analyses.end(), name) != analyses.end();
}

std::vector<CoverageRow> coverage_rows(const corpus::Corpus& corpus, judge::Judge& judge,
                                       const std::string& model_filter, int year_filter) {
    std::map<std::string, std::vector<const corpus::ReviewRecord*>> humans_by_paper;
    std::map<GroupKey, std::map<std::string, std::vector<const corpus::ReviewRecord*>>>
        generated;
    for (const corpus::ReviewRecord& review : corpus.reviews) {
        const corpus::PaperRecord* paper = corpus.find_paper(review.paper_id);
        if (paper == nullptr) continue;
        if (year_filter != 0 && paper->year != year_filter) continue;
        if (review.source.human) {
            humans_by_paper[review.paper_id].push_back(&review);
        } else {
            if (!model_filter.empty() && review.source.model != model_filter) continue;
            generated[{review.source, review.prompt_kind}][review.paper_id].push_back(&review);
        }
    }
    auto by_id = [](const corpus::ReviewRecord* a, const corpus::ReviewRecord* b) {
        return a->review_id < b->review_id;
    };
    for (auto& [paper, list] : humans_by_paper) std::sort(list.begin(), list.end(), by_id);

    // Human atoms per paper: concatenation over the paper's human reviews in
    // review-id order.
    std::map<std::string, judge::AtomicSet> human_atoms;
    for (const auto& [paper_id, reviews] : humans_by_paper) {
        judge::AtomicSet merged;
        for (const corpus::ReviewRecord* review : reviews) {
            if (trim(review->full_text).empty()) continue;
            judge::AtomicSet atoms =
                judge::extract_atoms(review->full_text, judge::AtomOrigin::human, judge);
            merged.strengths.insert(merged.strengths.end(), atoms.strengths.begin(),
                                    atoms.strengths.end());
            merged.weaknesses.insert(merged.weaknesses.end(), atoms.weaknesses.begin(),
                                     atoms.weaknesses.end());
        }
        human_atoms[paper_id] = std::move(merged);
    }

    std::vector<CoverageRow> rows;
    for (auto& [key, by_paper] : generated) {
        for (auto& [paper_id, reviews] : by_paper) {
            auto human_it = human_atoms.find(paper_id);
            if (human_it == human_atoms.end()) continue;
            std::sort(reviews.begin(), reviews.end(), by_id);
            for (const corpus::ReviewRecord* review : reviews) {
                if (trim(review->full_text).empty()) continue;
                judge::AtomicSet atoms = judge::extract_atoms(
                    review->full_text, judge::AtomOrigin::generated, judge);
                auto add_dimension = [&](const std::vector<std::string>& human_items,
                                         const std::vector<std::string>& generated_items,
                                         const char* dimension) {
                    if (human_items.empty()) return;  // recall undefined
                    CoverageRow row;
                    row.model = key.source.model;
                    row.prompt_kind = key.prompt;
                    row.paper_id = paper_id;
                    row.review_id = review->review_id;
                    row.dimension = dimension;
                    row.human_items = human_items.size();
                    row.generated_items = generated_items.size();
                    row.result =
                        coverage::coverage_metrics(human_items, generated_items, judge);
                    rows.push_back(std::move(row));
                };
                add_dimension(human_it->second.strengths, atoms.strengths, "strength");
                add_dimension(human_it->second.weaknesses, atoms.weaknesses, "weakness");
            }
        }
    }
    return rows;
}

void apply_override(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "corpus") config.corpus_dir = trim(value);
    else if (key == "out") config.out_dir = trim(value);
    else if (key == "offline") config.offline = parse_bool(value);
    else if (key == "cache_dir") config.cache_dir = trim(value);
    else if (key == "data_dir") config.data_dir = trim(value);
    else if (key == "judge") config.judge_kind = trim(value);
    else if (key == "judge_endpoint") config.judge_endpoint = trim(value);
    else if (key == "judge_model") config.judge_model = trim(value);
    else if (key == "rps") config.requests_per_second = std::stod(value);
    else if (key == "contact") config.contact = trim(value);
    else if (key == "jobs") config.jobs = static_cast<unsigned>(std::stoul(value));
    else if (key == "seed") config.seed = std::stoull(value);
    else if (key == "agreement_prompt")
        config.agreement_prompt = corpus::prompt_kind_from_string(trim(value));
    else if (key == "analyses") {
        config.analyses.clear();
        std::istringstream in(value);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (!item.empty()) config.analyses.push_back(item);
        }
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    RunConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key=value");
        apply_override(config, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return config;
}

std::string config_hash(const RunConfig& config) {
    std::ostringstream canon;
    canon << "version=" << kVersion << ";seed=" << config.seed
          << ";offline=" << (config.offline ? 1 : 0) << ";judge=" << config.judge_kind
          << ";judge_model=" << config.judge_model
          << ";judge_endpoint=" << config.judge_endpoint
          << ";agreement_prompt=" << corpus::to_string(config.agreement_prompt) << ";analyses=";
    for (std::size_t i = 0; i < config.analyses.size(); ++i) {
        if (i) canon << ',';
        canon << config.analyses[i];
    }
    return sha256_hex(canon.str());
}

RunResult run(const RunConfig& config) {
    if (config.corpus_dir.empty()) throw ConfigError("corpus directory not set");
    if (config.offline && !config.cache_dir.empty() &&
        !std::filesystem::exists(config.cache_dir))
        throw ConfigError("offline run requires an existing cache dir: " +
                          config.cache_dir.string());

    corpus::Corpus corpus = corpus::load_corpus(config.corpus_dir);

    std::unique_ptr<judge::Judge> judge;
    if (config.judge_kind == "stub") {
        judge = std::make_unique<judge::StubJudge>();
    } else if (config.judge_kind == "http") {
        judge::JudgeConfig jc;
        jc.endpoint = config.judge_endpoint;
        jc.model = config.judge_model;
        if (!config.data_dir.empty()) jc.prompts_dir = config.data_dir / "prompts";
        judge = std::make_unique<judge::LlmJudge>(jc, judge::make_http_chat_transport());
    } else {
        throw ConfigError("unknown judge kind: " + config.judge_kind);
    }

    std::unique_ptr<bib::Verifier> verifier;
    if (!config.cache_dir.empty() || !config.offline) {
        bib::VerifierConfig vc;
        vc.offline = config.offline;
        vc.cache_dir = config.cache_dir;
        vc.requests_per_second = config.requests_per_second;
        vc.contact = config.contact;
        verifier = std::make_unique<bib::Verifier>(vc, make_live_transport());
    }

    std::vector<MetricsRow> rows =
        metrics::compute_rows(corpus, judge.get(), verifier.get(), config.jobs);

    // Render everything before writing anything.
    std::map<std::string, std::string> files;
    if (config.analysis_enabled("metrics")) files["metrics.jsonl"] = render_metrics_jsonl(rows);
    if (config.analysis_enabled("benchmark")) {
        std::vector<BenchmarkLine> lines = benchmark_lines(corpus, rows);
        files["benchmark_table.csv"] = render_benchmark_csv(lines);
        files["benchmark_table.json"] = render_benchmark_json(lines);
    }
    if (config.analysis_enabled("agreement"))
        files["agreement.csv"] = render_agreement_csv(corpus, config.agreement_prompt);
    if (config.analysis_enabled("distributions"))
        files["distributions.csv"] = render_distributions_csv(corpus, rows);
    if (config.analysis_enabled("coverage"))
        files["coverage.csv"] = render_coverage_csv(coverage_rows(corpus, *judge));
    if (config.analysis_enabled("era")) files["era.csv"] = render_era_csv(rows);

    ordered_json manifest;
    manifest["tool_version"] = kVersion;
    manifest["seed"] = config.seed;
    manifest["config_sha256"] = config_hash(config);
    ordered_json outputs = ordered_json::array();
    for (const auto& [name, _] : files) outputs.push_back(name);
    manifest["outputs"] = outputs;
    files["manifest.json"] = manifest.dump(2) + "\n";

    std::filesystem::create_directories(config.out_dir);
    RunResult result;
    for (const auto& [name, content] : files) {
        std::ofstream out(config.out_dir / name, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + (config.out_dir / name).string());
        out << content;
        result.emitted.push_back(name);
    }
    result.rows = std::move(rows);
    return result;
}

} // namespace revbench::report
