#include "revbench/stats.hpp"

#include "revbench/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

namespace revbench::stats {

namespace {

// Average ranks (1-based) of the pooled values, ties sharing their midrank.
std::vector<double> average_ranks(std::span<const double> values) {
    std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = midrank;
        i = j + 1;
    }
    return ranks;
}

double normal_two_sided_p(double z_abs) {
    return std::erfc(z_abs / std::sqrt(2.0));
}

// Exact two-sided permutation p-value. Counts, over all ways of choosing
// which pooled observations belong to the first sample, the assignments
// whose U deviates from nm/2 by at least the observed amount. Doubled ranks
// keep everything integral.
double exact_permutation_p(const std::vector<double>& pooled_ranks, std::size_t na,
                           double u_observed) {
    std::size_t n = pooled_ranks.size();
    std::size_t nb = n - na;
    std::vector<std::int64_t> doubled(n);
    for (std::size_t i = 0; i < n; ++i)
        doubled[i] = static_cast<std::int64_t>(std::llround(2.0 * pooled_ranks[i]));
    std::int64_t total = std::accumulate(doubled.begin(), doubled.end(), std::int64_t{0});

    // ways[j][s]: number of j-subsets with doubled-rank sum s.
    std::vector<std::vector<double>> ways(na + 1, std::vector<double>(total + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::int64_t r = doubled[idx];
        std::size_t jmax = std::min(idx + 1, na);
        for (std::size_t j = jmax; j >= 1; --j) {
            for (std::int64_t s = total; s >= r; --s) {
                if (ways[j - 1][s - r] != 0.0) ways[j][s] += ways[j - 1][s - r];
            }
        }
    }

    // With T the doubled rank sum of the first sample, 2U - nm = T - shift;
    // midranks make U a multiple of 0.5, so everything stays integral.
    std::int64_t shift = static_cast<std::int64_t>(na) * static_cast<std::int64_t>(na + 1) +
                         static_cast<std::int64_t>(na) * static_cast<std::int64_t>(nb);
    std::int64_t dev_observed =
        std::llabs(static_cast<std::int64_t>(std::llround(2.0 * u_observed)) -
                   static_cast<std::int64_t>(na) * static_cast<std::int64_t>(nb));
    double hits = 0.0, all = 0.0;
    for (std::int64_t s = 0; s <= total; ++s) {
        double w = ways[na][s];
        if (w == 0.0) continue;
        all += w;
        if (std::llabs(s - shift) >= dev_observed) hits += w;
    }
    return hits / all;
}

} // namespace

Distribution Distribution::from_mass(std::vector<int> support, std::vector<double> mass,
                                     std::size_t n) {
    if (support.size() != mass.size())
        throw SupportMismatchError("distribution: support/mass size mismatch");
    double sum = 0.0;
    for (double m : mass) {
        if (m < 0.0) throw DegenerateInputError("distribution: negative mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw DegenerateInputError("distribution: mass sums to " + std::to_string(sum));
    Distribution d;
    d.support = std::move(support);
    d.mass = std::move(mass);
    d.n = n;
    return d;
}

Distribution make_distribution(std::span<const int> values, std::vector<int> support) {
    if (values.empty()) throw DegenerateInputError("make_distribution: no values");
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < support.size(); ++i) index[support[i]] = i;
    std::vector<double> mass(support.size(), 0.0);
    for (int v : values) {
        auto it = index.find(v);
        if (it == index.end())
            throw SupportMismatchError("make_distribution: value " + std::to_string(v) +
                                       " outside support");
        mass[it->second] += 1.0;
    }
    for (double& m : mass) m /= static_cast<double>(values.size());
    Distribution d;
    d.support = std::move(support);
    d.mass = std::move(mass);
    d.n = values.size();
    return d;
}

TvDiff tv_diff(const Distribution& a, const Distribution& b) {
    if (a.support != b.support) throw SupportMismatchError("tv_diff: supports differ");
    return tv_diff_mass(a.mass, b.mass);
}

TvDiff tv_diff_mass(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw SupportMismatchError("tv_diff: supports differ");
    TvDiff out;
    out.per_bin_pp.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double pp = (a[i] - b[i]) * 100.0;
        out.per_bin_pp.push_back(pp);
        out.sum_abs_pp += std::abs(pp);
    }
    return out;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw EmptyInputError("mann_whitney_u: empty sample");
    std::size_t na = a.size(), nb = b.size();
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> ranks = average_ranks(pooled);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranks[i];
    double u = rank_sum_a - static_cast<double>(na) * static_cast<double>(na + 1) / 2.0;

    MannWhitneyResult result;
    result.u = u;

    auto [min_it, max_it] = std::minmax_element(pooled.begin(), pooled.end());
    if (*min_it == *max_it) {
        result.p_two_sided = 1.0;  // no information in a constant pool
        return result;
    }

    if (na * nb <= 10000) {
        result.p_two_sided = exact_permutation_p(ranks, na, u);
        return result;
    }

    // Tie-corrected normal approximation with continuity correction.
    double n = static_cast<double>(na + nb);
    double tie_term = 0.0;
    {
        std::vector<double> sorted(pooled);
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
    double var = (static_cast<double>(na) * static_cast<double>(nb) / 12.0) *
                 ((n * n * n - n - tie_term) / (n * (n - 1.0)));
    if (var <= 0.0) {
        result.p_two_sided = 1.0;
        return result;
    }
    double z = std::max(std::abs(u - mu) - 0.5, 0.0) / std::sqrt(var);
    result.p_two_sided = std::min(normal_two_sided_p(z), 1.0);
    return result;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw DegenerateInputError("spearman: requires equal lengths >= 3");
    std::vector<double> rx = average_ranks(x);
    std::vector<double> ry = average_ranks(y);
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = rx[i] - mx, dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInputError("spearman: constant input");
    return sxy / std::sqrt(sxx * syy);
}

EraComparison era_compare(std::span<const double> pre, std::span<const double> post) {
    if (pre.empty() || post.empty()) throw EmptyInputError("era_compare: empty era");
    EraComparison out;
    out.pre_mean = mean(pre);
    out.post_mean = mean(post);
    out.p_value = mann_whitney_u(pre, post).p_two_sided;
    out.significant_at_0_05 = out.p_value < 0.05;
    return out;
}

double mean(std::span<const double> values) {
    if (values.empty()) throw EmptyInputError("mean: empty input");
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2) throw DegenerateInputError("sample_std: requires n >= 2");
    double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double median(std::span<const double> values) {
    if (values.empty()) throw EmptyInputError("median: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

} // namespace revbench::stats
