#include "revbench/agreement.hpp"

#include "revbench/errors.hpp"
#include "revbench/stats.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace revbench::agreement {

RatingMatrix RatingMatrix::from_ratings(
    const std::vector<std::pair<std::string, int>>& unit_ratings) {
    RatingMatrix m;
    std::set<int> cats;
    std::map<std::string, std::map<int, int>> by_unit;
    std::vector<std::string> unit_order;
    for (const auto& [unit, rating] : unit_ratings) {
        if (!by_unit.count(unit)) unit_order.push_back(unit);
        by_unit[unit][rating]++;
        cats.insert(rating);
    }
    m.categories.assign(cats.begin(), cats.end());
    std::map<int, std::size_t> cat_index;
    for (std::size_t i = 0; i < m.categories.size(); ++i) cat_index[m.categories[i]] = i;
    // Preserve first-seen unit order so callers control determinism.
    for (const std::string& unit : unit_order) {
        m.units.push_back(unit);
        std::vector<int> row(m.categories.size(), 0);
        for (const auto& [rating, count] : by_unit[unit]) row[cat_index[rating]] = count;
        m.counts.push_back(std::move(row));
    }
    return m;
}

double krippendorff_ordinal(const RatingMatrix& matrix) {
    std::size_t ncat = matrix.categories.size();
    // Pairable units only; singleton units are dropped from the marginals too.
    std::vector<std::size_t> pairable;
    for (std::size_t u = 0; u < matrix.counts.size(); ++u) {
        int m_u = std::accumulate(matrix.counts[u].begin(), matrix.counts[u].end(), 0);
        if (m_u >= 2) pairable.push_back(u);
    }
    if (pairable.empty())
        throw UndefinedAlphaError("krippendorff: no unit has two or more ratings");

    std::vector<double> n_c(ncat, 0.0);
    double n_total = 0.0;
    double pair_norm = 0.0;  // sum of m_u (m_u - 1)
    for (std::size_t u : pairable) {
        int m_u = std::accumulate(matrix.counts[u].begin(), matrix.counts[u].end(), 0);
        pair_norm += static_cast<double>(m_u) * (m_u - 1);
        for (std::size_t c = 0; c < ncat; ++c) {
            n_c[c] += matrix.counts[u][c];
            n_total += matrix.counts[u][c];
        }
    }

    // Ordinal distance: squared gap between cumulative marginals.
    // delta2[c][k] = (sum_{g=c..k} n_g - (n_c + n_k) / 2)^2
    std::vector<std::vector<double>> delta2(ncat, std::vector<double>(ncat, 0.0));
    for (std::size_t c = 0; c < ncat; ++c) {
        double between = 0.0;
        for (std::size_t k = c; k < ncat; ++k) {
            between += n_c[k];
            double d = between - (n_c[c] + n_c[k]) / 2.0;
            delta2[c][k] = d * d;
            delta2[k][c] = d * d;
        }
    }

    double d_obs = 0.0;
    for (std::size_t u : pairable) {
        for (std::size_t c = 0; c < ncat; ++c) {
            if (matrix.counts[u][c] == 0) continue;
            for (std::size_t k = 0; k < ncat; ++k) {
                if (matrix.counts[u][k] == 0) continue;
                d_obs += static_cast<double>(matrix.counts[u][c]) * matrix.counts[u][k] *
                         delta2[c][k];
            }
        }
    }
    d_obs /= pair_norm;

    double d_exp = 0.0;
    for (std::size_t c = 0; c < ncat; ++c) {
        for (std::size_t k = 0; k < ncat; ++k) {
            d_exp += n_c[c] * n_c[k] * delta2[c][k];
        }
    }
    d_exp /= n_total * (n_total - 1.0);

    if (d_exp == 0.0)
        throw UndefinedAlphaError("krippendorff: zero expected disagreement");
    return 1.0 - d_obs / d_exp;
}

AlphaResult alpha_by_year(const corpus::Corpus& corpus, corpus::Venue venue,
                          const std::optional<PanelAugmentation>& include_llm) {
    using corpus::ReviewRecord;

    std::map<int, std::vector<std::pair<std::string, int>>> ratings_by_year;
    std::map<int, std::map<std::string, const ReviewRecord*>> augment_by_year;

    for (const ReviewRecord& review : corpus.reviews) {
        const auto* paper = corpus.find_paper(review.paper_id);
        if (paper == nullptr || paper->venue != venue) continue;
        if (!review.numeric_rating) continue;
        if (review.source.human) {
            ratings_by_year[paper->year].push_back({review.paper_id, *review.numeric_rating});
        } else if (include_llm && review.source.model == include_llm->model &&
                   review.prompt_kind == include_llm->prompt_kind) {
            // Exactly one generated review joins the panel per paper: the
            // first by review id.
            auto& slot = augment_by_year[paper->year][review.paper_id];
            if (slot == nullptr || review.review_id < slot->review_id) slot = &review;
        }
    }
    if (include_llm) {
        for (auto& [year, by_paper] : augment_by_year) {
            for (auto& [paper_id, review] : by_paper) {
                ratings_by_year[year].push_back({paper_id, *review->numeric_rating});
            }
        }
    }

    AlphaResult result;
    std::vector<double> defined;
    for (auto& [year, unit_ratings] : ratings_by_year) {
        // Stable unit order: sort by paper id.
        std::sort(unit_ratings.begin(), unit_ratings.end());
        RatingMatrix matrix = RatingMatrix::from_ratings(unit_ratings);
        for (const auto& row : matrix.counts) {
            if (std::accumulate(row.begin(), row.end(), 0) < 2) ++result.excluded_units;
        }
        try {
            double alpha = krippendorff_ordinal(matrix);
            result.per_year[year] = alpha;
            defined.push_back(alpha);
        } catch (const UndefinedAlphaError&) {
            result.per_year[year] = std::nullopt;
        }
    }
    if (!defined.empty()) result.mean_alpha = stats::mean(defined);
    return result;
}

ConditionalMathRates conditional_math_rates(std::span<const std::pair<bool, bool>> pairs) {
    std::size_t human_pos = 0, human_neg = 0, llm_pos_given_pos = 0, llm_pos_given_neg = 0;
    for (const auto& [human, llm] : pairs) {
        if (human) {
            ++human_pos;
            if (llm) ++llm_pos_given_pos;
        } else {
            ++human_neg;
            if (llm) ++llm_pos_given_neg;
        }
    }
    ConditionalMathRates rates;
    if (human_pos > 0)
        rates.p_pos_pos = static_cast<double>(llm_pos_given_pos) / human_pos;
    if (human_neg > 0)
        rates.p_pos_neg = static_cast<double>(llm_pos_given_neg) / human_neg;
    return rates;
}

double confidence_diff(int llm_conf, std::span<const int> human_confs) {
    if (human_confs.empty()) throw EmptyInputError("confidence_diff: no human confidences");
    std::vector<double> values(human_confs.begin(), human_confs.end());
    return static_cast<double>(llm_conf) - stats::median(values);
}

} // namespace revbench::agreement
