#include "revbench/stats.hpp"

#include "revbench/errors.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace revbench;
using namespace revbench::stats;

TEST_CASE("make_distribution normalizes and validates") {
    std::vector<int> values = {4, 4, 4};
    Distribution d = make_distribution(values, {1, 2, 3, 4, 5});
    CHECK(d.mass[3] == doctest::Approx(1.0));
    CHECK(d.n == 3);

    std::vector<int> pair = {1, 2};
    Distribution d2 = make_distribution(pair, {1, 2});
    CHECK(d2.mass[0] == doctest::Approx(0.5));
    CHECK(d2.mass[1] == doctest::Approx(0.5));

    std::vector<int> bad = {7};
    CHECK_THROWS_AS(make_distribution(bad, {1, 2}), SupportMismatchError);
    CHECK_THROWS_AS(make_distribution(std::vector<int>{}, {1, 2}), DegenerateInputError);
}

TEST_CASE("distribution mass validation") {
    CHECK_THROWS_AS(Distribution::from_mass({1, 2}, {0.5, 0.6}), DegenerateInputError);
    CHECK_THROWS_AS(Distribution::from_mass({1, 2}, {-0.1, 1.1}), DegenerateInputError);
    Distribution ok = Distribution::from_mass({1, 2}, {0.25, 0.75});
    CHECK(ok.mass[1] == doctest::Approx(0.75));
}

TEST_CASE("tv_diff basics") {
    Distribution a = Distribution::from_mass({1, 2}, {0.25, 0.75});
    Distribution b = Distribution::from_mass({1, 2}, {0.50, 0.50});
    TvDiff diff = tv_diff(a, b);
    CHECK(diff.per_bin_pp[0] == doctest::Approx(-25.0));
    CHECK(diff.per_bin_pp[1] == doctest::Approx(25.0));
    CHECK(diff.sum_abs_pp == doctest::Approx(50.0));

    TvDiff self = tv_diff(a, a);
    CHECK(self.sum_abs_pp == doctest::Approx(0.0));

    Distribution c = Distribution::from_mass({1, 3}, {0.5, 0.5});
    CHECK_THROWS_AS(tv_diff(a, c), SupportMismatchError);
}

TEST_CASE("tv_diff symmetry and zero-iff-equal") {
    oracles::TestRng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> ma(5), mb(5);
        double sa = 0, sb = 0;
        for (int i = 0; i < 5; ++i) {
            ma[i] = rng.uniform(0, 100);
            mb[i] = rng.uniform(0, 100);
            sa += ma[i];
            sb += mb[i];
        }
        for (int i = 0; i < 5; ++i) {
            ma[i] /= sa;
            mb[i] /= sb;
        }
        TvDiff ab = tv_diff_mass(ma, mb);
        TvDiff ba = tv_diff_mass(mb, ma);
        CHECK(ab.sum_abs_pp == doctest::Approx(ba.sum_abs_pp).epsilon(1e-12));
        if (ma == mb) CHECK(ab.sum_abs_pp == 0.0);
        else CHECK(ab.sum_abs_pp > 0.0);
    }
}

TEST_CASE("mann-whitney hand cases") {
    std::vector<double> a = {1, 2, 3};
    std::vector<double> b = {4, 5, 6};
    MannWhitneyResult r = mann_whitney_u(a, b);
    CHECK(r.u == doctest::Approx(0.0));

    MannWhitneyResult same = mann_whitney_u(a, a);
    CHECK(same.p_two_sided == doctest::Approx(1.0));

    std::vector<double> constant = {2, 2, 2};
    MannWhitneyResult degenerate = mann_whitney_u(constant, constant);
    CHECK(degenerate.p_two_sided == doctest::Approx(1.0));

    std::vector<double> empty;
    CHECK_THROWS_AS(mann_whitney_u(empty, b), EmptyInputError);
}

TEST_CASE("mann-whitney exact p matches enumeration oracle") {
    oracles::TestRng rng(101);
    int tested = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t na = static_cast<std::size_t>(rng.uniform(1, 8));
        std::size_t nb = static_cast<std::size_t>(rng.uniform(1, 8));
        if (na * nb > 64) continue;
        std::vector<double> a(na), b(nb);
        for (auto& v : a) v = rng.uniform(0, 6);  // ties are frequent
        for (auto& v : b) v = rng.uniform(0, 6);
        double expected = oracles::mann_whitney_exact_p(a, b);
        double actual = mann_whitney_u(a, b).p_two_sided;
        CHECK_MESSAGE(std::abs(expected - actual) < 1e-6,
                      "na=" << na << " nb=" << nb << " expected=" << expected
                            << " actual=" << actual);
        ++tested;
    }
    CHECK(tested > 150);
}

TEST_CASE("mann-whitney U duality and pair-count equivalence") {
    oracles::TestRng rng(202);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t na = static_cast<std::size_t>(rng.uniform(1, 12));
        std::size_t nb = static_cast<std::size_t>(rng.uniform(1, 12));
        std::vector<double> a(na), b(nb);
        for (auto& v : a) v = rng.uniform(-5, 5);
        for (auto& v : b) v = rng.uniform(-5, 5);
        double u_ab = mann_whitney_u(a, b).u;
        double u_ba = mann_whitney_u(b, a).u;
        CHECK(u_ab + u_ba == doctest::Approx(double(na * nb)).epsilon(1e-12));
        CHECK(u_ab == doctest::Approx(oracles::mann_whitney_u_paircount(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("mann-whitney large-sample path uses the normal approximation") {
    // 101*101 > 10,000 forces the approximate branch; sanity-check behavior.
    std::vector<double> a, b;
    oracles::TestRng rng(303);
    for (int i = 0; i < 101; ++i) {
        a.push_back(rng.uniform_real());
        b.push_back(rng.uniform_real() + 2.0);  // clearly shifted
    }
    MannWhitneyResult shifted = mann_whitney_u(a, b);
    CHECK(shifted.p_two_sided < 1e-6);

    std::vector<double> c = a, d = a;
    MannWhitneyResult null_case = mann_whitney_u(c, d);
    CHECK(null_case.p_two_sided > 0.9);
}

TEST_CASE("spearman hand cases and oracle equivalence") {
    std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> inc = {10, 20, 30, 40, 50};
    CHECK(spearman(x, inc) == doctest::Approx(1.0));
    std::vector<double> dec = {9, 7, 5, 3, 1};
    CHECK(spearman(x, dec) == doctest::Approx(-1.0));

    std::vector<double> constant = {2, 2, 2, 2, 2};
    CHECK_THROWS_AS(spearman(x, constant), DegenerateInputError);
    std::vector<double> two = {1, 2};
    CHECK_THROWS_AS(spearman(two, two), DegenerateInputError);

    oracles::TestRng rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> u(10), v(10);
        for (auto& val : u) val = rng.uniform(0, 20);
        for (auto& val : v) val = rng.uniform(0, 20);
        bool u_const = std::all_of(u.begin(), u.end(), [&](double d) { return d == u[0]; });
        bool v_const = std::all_of(v.begin(), v.end(), [&](double d) { return d == v[0]; });
        if (u_const || v_const) continue;
        CHECK(spearman(u, v) ==
              doctest::Approx(oracles::spearman_bruteforce(u, v)).epsilon(1e-12));
    }
}

TEST_CASE("spearman is invariant under strictly increasing transforms") {
    oracles::TestRng rng(505);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(8), y(8);
        for (auto& v : x) v = rng.uniform(1, 50);
        for (auto& v : y) v = rng.uniform(1, 50);
        bool x_const = std::all_of(x.begin(), x.end(), [&](double d) { return d == x[0]; });
        bool y_const = std::all_of(y.begin(), y.end(), [&](double d) { return d == y[0]; });
        if (x_const || y_const) continue;
        std::vector<double> fx = x;
        for (auto& v : fx) v = std::exp(v / 10.0);  // strictly increasing
        CHECK(spearman(x, y) == doctest::Approx(spearman(fx, y)).epsilon(1e-9));
    }
}

TEST_CASE("era_compare basics") {
    std::vector<double> pre = {1, 2, 3, 4};
    EraComparison identical = era_compare(pre, pre);
    CHECK(identical.significant_at_0_05 == false);
    CHECK(identical.pre_mean == doctest::Approx(identical.post_mean));

    CHECK_THROWS_AS(era_compare({}, pre), EmptyInputError);
}

TEST_CASE("descriptive helpers") {
    std::vector<double> v = {400, 600};
    CHECK(mean(v) == doctest::Approx(500.0));
    CHECK(sample_std(v) == doctest::Approx(141.4213562373095).epsilon(1e-12));
    std::vector<double> odd = {3, 1, 2};
    CHECK(median(odd) == doctest::Approx(2.0));
    std::vector<double> even = {3, 4, 5, 1};
    CHECK(median(even) == doctest::Approx(3.5));
}
