#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace revbench::stats {

// Normalized histogram over an ordered integer support.
struct Distribution {
    std::vector<int> support;
    std::vector<double> mass;
    std::size_t n = 0;

    // Validates nonnegative mass summing to 1 within 1e-9.
    static Distribution from_mass(std::vector<int> support, std::vector<double> mass,
                                  std::size_t n = 0);
};

// Normalized histogram of the values over the support; every value must be
// a member of the support.
Distribution make_distribution(std::span<const int> values, std::vector<int> support);

struct TvDiff {
    std::vector<double> per_bin_pp;  // (a - b) * 100, percentage points
    double sum_abs_pp = 0.0;
};

// Per-bin percentage-point differences and their absolute sum. Throws
// SupportMismatchError unless supports are identical.
TvDiff tv_diff(const Distribution& a, const Distribution& b);

// Same computation on raw mass vectors sharing an implicit common support.
// Useful when comparing against externally published (rounded) tables whose
// masses do not sum to exactly 1.
TvDiff tv_diff_mass(std::span<const double> a, std::span<const double> b);

struct MannWhitneyResult {
    double u = 0.0;           // U statistic of the first sample
    double p_two_sided = 1.0;
};

// Rank-sum U with average ranks for ties. Small problems
// (|a|*|b| <= 10,000) get an exact permutation p-value via a
// count-distribution recursion; larger ones use the normal approximation
// with tie-corrected variance and continuity correction. Two-sided
// throughout. Degenerate pools (every value identical) give p = 1.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Pearson correlation of average-ranked data. Requires equal lengths >= 3;
// throws DegenerateInputError for constant input.
double spearman(std::span<const double> x, std::span<const double> y);

struct EraComparison {
    double pre_mean = 0.0;
    double post_mean = 0.0;
    double p_value = 1.0;
    bool significant_at_0_05 = false;
};

// Means per era plus the Mann-Whitney p-value between the two samples.
// Throws EmptyInputError when either era has no observations.
EraComparison era_compare(std::span<const double> pre, std::span<const double> post);

double mean(std::span<const double> values);

// Sample standard deviation (n - 1 denominator); requires n >= 2.
double sample_std(std::span<const double> values);

// Median; even-length inputs average the two central values.
double median(std::span<const double> values);

} // namespace revbench::stats
