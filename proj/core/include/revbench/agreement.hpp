#pragma once

#include "revbench/corpus.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace revbench::agreement {

// Per-unit category counts for one reviewer panel. Categories are the
// ordered rating values; counts[u][c] is how often unit u received the
// c-th category.
struct RatingMatrix {
    std::vector<std::string> units;
    std::vector<int> categories;                   // sorted ascending
    std::vector<std::vector<int>> counts;           // units x categories

    static RatingMatrix from_ratings(
        const std::vector<std::pair<std::string, int>>& unit_ratings);
};

// Ordinal Krippendorff alpha = 1 - Do/De with the squared cumulative-
// frequency distance between categories. Units with fewer than two ratings
// contribute to neither the observed disagreement nor the marginals.
// Throws UndefinedAlphaError when no unit is pairable or when expected
// disagreement is zero (all ratings identical).
double krippendorff_ordinal(const RatingMatrix& matrix);

struct AlphaResult {
    std::map<int, std::optional<double>> per_year;  // missing = undefined that year
    std::optional<double> mean_alpha;               // mean over defined years
    std::size_t excluded_units = 0;                 // units with < 2 ratings
};

// Alpha per year for one venue from the corpus's numeric ratings, using
// human reviews only, or humans plus exactly one review (first by review id)
// of the given model/prompt per paper.
struct PanelAugmentation {
    std::string model;
    corpus::PromptKind prompt_kind = corpus::PromptKind::extended;
};

AlphaResult alpha_by_year(const corpus::Corpus& corpus, corpus::Venue venue,
                          const std::optional<PanelAugmentation>& include_llm = std::nullopt);

struct ConditionalMathRates {
    std::optional<double> p_pos_pos;  // P(llm engaged | human engaged)
    std::optional<double> p_pos_neg;  // P(llm engaged | human not engaged)
};

// Conditional detection rates over (human_engaged, llm_engaged) pairs.
// A rate is missing when its conditioning class is empty.
ConditionalMathRates conditional_math_rates(
    std::span<const std::pair<bool, bool>> pairs);

// LLM confidence minus the median human confidence for the same paper.
double confidence_diff(int llm_conf, std::span<const int> human_confs);

} // namespace revbench::agreement
