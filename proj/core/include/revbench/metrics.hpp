#pragma once

#include "revbench/bib_verify.hpp"
#include "revbench/corpus.hpp"
#include "revbench/judge.hpp"
#include "revbench/stats.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace revbench::metrics {

// Everything computed for one review; the unit of aggregation for every
// table. Optional fields stay empty when their inputs are unavailable.
struct MetricsRow {
    std::string review_id;
    corpus::Source source;
    corpus::PromptKind prompt_kind = corpus::PromptKind::none;
    corpus::Venue venue = corpus::Venue::ICLR;
    int year = 0;
    std::size_t tkc = 0;
    std::optional<double> ttr;
    std::optional<double> fre;
    std::optional<double> fkg;
    std::size_t xref_count = 0;
    std::size_t citations_total = 0;
    std::optional<std::size_t> citations_verified;  // absent without a verifier
    std::optional<bool> math_engaged;               // absent without a judge
    std::optional<int> numeric_rating;
    std::optional<int> numeric_confidence;
};

// Computes one row. judge/verifier may be null, which leaves the
// corresponding fields missing. Errors from either are rethrown with the
// review id attached.
MetricsRow compute_row(const corpus::ReviewRecord& review, const corpus::PaperRecord& paper,
                       judge::Judge* judge, bib::Verifier* verifier);

// All rows for a corpus, computed in parallel and returned sorted by
// (source, prompt, venue, year, review_id).
std::vector<MetricsRow> compute_rows(const corpus::Corpus& corpus, judge::Judge* judge,
                                     bib::Verifier* verifier, unsigned jobs = 1);

struct FieldStat {
    std::optional<double> mean;
    std::optional<double> std_dev;  // sample (n-1); absent when n < 2
    std::size_t n = 0;
};

struct GroupAggregate {
    corpus::Source source;
    corpus::PromptKind prompt_kind = corpus::PromptKind::none;
    std::size_t n = 0;
    FieldStat tkc, ttr, fre, fkg, xref, citations_total, citations_verified, rating, confidence;
    FieldStat math;  // proportion engaged (mean of 0/1)
};

// Per-(source, prompt) means and sample standard deviations; groups sorted
// human-first, then by model name and prompt kind.
std::vector<GroupAggregate> aggregate_table(std::span<const MetricsRow> rows);

struct AblationDeltas {
    std::optional<double> tkc, ttr, fre, fkg, xref, math;
};

// Extended-minus-guidelines mean deltas for one model. Throws ConfigError
// unless both prompt kinds are present.
AblationDeltas prompt_ablation(std::span<const MetricsRow> rows, const std::string& model);

// Model-group mean over human mean, per metric.
struct HumanRatios {
    std::optional<double> tkc, ttr, fre, fkg, xref, math;
};
HumanRatios ratios_to_human(const GroupAggregate& model_group, const GroupAggregate& human_group);

using MetricSelector = std::function<std::optional<double>(const MetricsRow&)>;

// Pre/post era comparison of one metric over the given rows for a venue.
stats::EraComparison era_compare_metric(std::span<const MetricsRow> rows, corpus::Venue venue,
                                        const MetricSelector& selector);

} // namespace revbench::metrics
