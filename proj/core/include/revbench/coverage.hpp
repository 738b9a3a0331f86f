#pragma once

#include "revbench/judge.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace revbench::coverage {

struct RougeL {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// LCS-based ROUGE-L: precision = LCS/|candidate|, recall = LCS/|reference|,
// F1 their harmonic mean (0 when both are 0). Throws EmptyInputError on an
// empty token list.
RougeL rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference);

// Case-folded word tokens used for all coverage-side text comparisons.
std::vector<std::string> content_tokens(std::string_view text);

// Mean over items of rouge_l(item, source).precision: how much of each
// item's wording is recoverable from the source in order. Missing for an
// empty item set.
std::optional<double> extraction_fidelity(const judge::AtomicSet& atoms, std::string_view source);

struct OverlapStats {
    double mean_pairwise_rouge_l = 0.0;  // mean F1 over unordered pairs
    double contained_fraction = 0.0;     // items subsumed by a sibling
};

// Pairwise overlap among one review's atomic items. An item counts as
// contained when some sibling reproduces >= 90% of its tokens as a
// subsequence (rouge_l precision >= 0.9). Missing with fewer than 2 items.
std::optional<OverlapStats> containment_stats(
    std::span<const std::vector<std::string>> items);

struct CoverageResult {
    std::optional<double> atomic_recall;    // human rows with >= 1 match
    std::optional<double> precision;        // generated columns with >= 1 match
    std::optional<double> mapping_density;  // mean matches per human row
    std::optional<double> compaction_ratio; // mean matches per generated column
    std::vector<std::vector<bool>> match_matrix;  // human x generated
};

// Pairwise coverage judging: match_matrix[i][j] says whether generated
// item j carries information from human item i, per the judge. Judge
// errors abort the whole computation.
CoverageResult coverage_metrics(std::span<const std::string> human_items,
                                std::span<const std::string> generated_items,
                                judge::Judge& judge);

// Aggregates recomputed from an existing boolean matrix.
CoverageResult coverage_from_matrix(std::vector<std::vector<bool>> match_matrix);

struct CountRatios {
    std::optional<double> ratio_w;
    std::optional<double> ratio_s;
    std::optional<double> ratio_total;
    double diff_w = 0.0;
    double diff_s = 0.0;
};

// Generated-to-human atomic count ratios and signed differences. Ratios
// are missing when the human denominator is zero.
CountRatios count_ratios(const judge::AtomicSet& human, const judge::AtomicSet& generated);

// Weakness-to-strength ratio; missing when there are no strengths.
std::optional<double> ws_ratio(const judge::AtomicSet& set);

} // namespace revbench::coverage
