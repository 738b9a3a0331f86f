#include "revbench/coverage.hpp"

#include "revbench/errors.hpp"
#include "revbench/parallel.hpp"
#include "revbench/text_stats.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace revbench::coverage {

namespace {

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1]) curr[j] = prev[j - 1] + 1;
            else curr[j] = std::max(prev[j], curr[j - 1]);
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

} // namespace

RougeL rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
    if (candidate.empty() || reference.empty())
        throw EmptyInputError("rouge_l: empty token list");
    double lcs = static_cast<double>(lcs_length(candidate, reference));
    RougeL out;
    out.precision = lcs / static_cast<double>(candidate.size());
    out.recall = lcs / static_cast<double>(reference.size());
    out.f1 = (out.precision + out.recall) > 0.0
                 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

std::vector<std::string> content_tokens(std::string_view text) {
    textstats::TokenizedText tt =
        textstats::tokenize(text, [](std::string_view) { return std::size_t{1}; });
    std::vector<std::string> out;
    out.reserve(tt.tokens.size());
    for (std::string& tok : tt.tokens) {
        std::transform(tok.begin(), tok.end(), tok.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        out.push_back(std::move(tok));
    }
    return out;
}

std::optional<double> extraction_fidelity(const judge::AtomicSet& atoms,
                                          std::string_view source) {
    std::vector<const std::string*> items;
    for (const std::string& s : atoms.strengths) items.push_back(&s);
    for (const std::string& s : atoms.weaknesses) items.push_back(&s);
    if (items.empty()) return std::nullopt;

    std::vector<std::string> source_tokens = content_tokens(source);
    double sum = 0.0;
    for (const std::string* item : items) {
        std::vector<std::string> item_tokens = content_tokens(*item);
        if (item_tokens.empty() || source_tokens.empty()) continue;  // contributes 0
        sum += rouge_l(item_tokens, source_tokens).precision;
    }
    return sum / static_cast<double>(items.size());
}

std::optional<OverlapStats> containment_stats(
    std::span<const std::vector<std::string>> items) {
    if (items.size() < 2) return std::nullopt;
    OverlapStats stats;
    double pair_sum = 0.0;
    std::size_t pairs = 0;
    std::vector<bool> contained(items.size(), false);
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            if (items[i].empty() || items[j].empty()) {
                ++pairs;
                continue;
            }
            RougeL forward = rouge_l(items[i], items[j]);
            pair_sum += forward.f1;
            ++pairs;
            if (forward.precision >= 0.9) contained[i] = true;
            // precision of (j as candidate, i as reference) equals forward
            // recall by symmetry of the LCS.
            if (forward.recall >= 0.9) contained[j] = true;
        }
    }
    stats.mean_pairwise_rouge_l = pairs > 0 ? pair_sum / static_cast<double>(pairs) : 0.0;
    stats.contained_fraction =
        static_cast<double>(std::count(contained.begin(), contained.end(), true)) /
        static_cast<double>(items.size());
    return stats;
}

CoverageResult coverage_metrics(std::span<const std::string> human_items,
                                std::span<const std::string> generated_items,
                                judge::Judge& judge) {
    std::size_t cols = generated_items.size();
    std::size_t cells = human_items.size() * cols;
    // Flat byte buffer: vector<bool> rows are bit-packed and unsafe to fill
    // from multiple threads.
    std::vector<std::uint8_t> flat(cells, 0);
    parallel_for(cells, judge.max_parallel(), [&](std::size_t cell) {
        std::size_t i = cell / cols;
        std::size_t j = cell % cols;
        flat[cell] = judge::coverage_match(human_items[i], generated_items[j], judge) ? 1 : 0;
    });
    std::vector<std::vector<bool>> matrix(human_items.size(), std::vector<bool>(cols, false));
    for (std::size_t i = 0; i < human_items.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            matrix[i][j] = flat[i * cols + j] != 0;
    return coverage_from_matrix(std::move(matrix));
}

CoverageResult coverage_from_matrix(std::vector<std::vector<bool>> match_matrix) {
    CoverageResult result;
    std::size_t rows = match_matrix.size();
    std::size_t cols = rows > 0 ? match_matrix[0].size() : 0;

    if (rows > 0) {
        std::size_t covered_rows = 0, row_matches = 0;
        for (const auto& row : match_matrix) {
            std::size_t count = static_cast<std::size_t>(
                std::count(row.begin(), row.end(), true));
            if (count > 0) ++covered_rows;
            row_matches += count;
        }
        result.atomic_recall = static_cast<double>(covered_rows) / static_cast<double>(rows);
        result.mapping_density = static_cast<double>(row_matches) / static_cast<double>(rows);
    }
    if (cols > 0 && rows > 0) {
        std::size_t covered_cols = 0, col_matches = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            std::size_t count = 0;
            for (std::size_t i = 0; i < rows; ++i)
                if (match_matrix[i][j]) ++count;
            if (count > 0) ++covered_cols;
            col_matches += count;
        }
        result.precision = static_cast<double>(covered_cols) / static_cast<double>(cols);
        result.compaction_ratio =
            static_cast<double>(col_matches) / static_cast<double>(cols);
    }
    result.match_matrix = std::move(match_matrix);
    return result;
}

CountRatios count_ratios(const judge::AtomicSet& human, const judge::AtomicSet& generated) {
    CountRatios out;
    double hw = static_cast<double>(human.weaknesses.size());
    double hs = static_cast<double>(human.strengths.size());
    double gw = static_cast<double>(generated.weaknesses.size());
    double gs = static_cast<double>(generated.strengths.size());
    if (hw > 0) out.ratio_w = gw / hw;
    if (hs > 0) out.ratio_s = gs / hs;
    if (hw + hs > 0) out.ratio_total = (gw + gs) / (hw + hs);
    out.diff_w = gw - hw;
    out.diff_s = gs - hs;
    return out;
}

std::optional<double> ws_ratio(const judge::AtomicSet& set) {
    if (set.strengths.empty()) return std::nullopt;
    return static_cast<double>(set.weaknesses.size()) /
           static_cast<double>(set.strengths.size());
}

} // namespace revbench::coverage
