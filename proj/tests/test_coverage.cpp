#include "revbench/coverage.hpp"

#include "revbench/errors.hpp"
#include "revbench/judge.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace revbench;
using namespace revbench::coverage;

namespace {

std::vector<std::string> toks(std::initializer_list<const char*> words) {
    return {words.begin(), words.end()};
}

// Judge whose coverage rule is plain string equality.
class IdentityJudge : public judge::Judge {
public:
    judge::MathVerdict classify_math(std::string_view) override { return {false, "n/a"}; }
    judge::AtomicSet extract_atoms(std::string_view, judge::AtomOrigin) override { return {}; }
    bool coverage_match(std::string_view base, std::string_view target) override {
        return base == target;
    }
};

} // namespace

TEST_CASE("rouge_l hand cases") {
    auto same = toks({"a", "b", "c"});
    RougeL identity = rouge_l(same, same);
    CHECK(identity.precision == doctest::Approx(1.0));
    CHECK(identity.recall == doctest::Approx(1.0));
    CHECK(identity.f1 == doctest::Approx(1.0));

    RougeL disjoint = rouge_l(toks({"a", "b"}), toks({"c", "d"}));
    CHECK(disjoint.precision == doctest::Approx(0.0));
    CHECK(disjoint.recall == doctest::Approx(0.0));
    CHECK(disjoint.f1 == doctest::Approx(0.0));

    RougeL partial = rouge_l(toks({"a", "b", "c", "d"}), toks({"a", "c", "d", "e"}));
    CHECK(partial.precision == doctest::Approx(0.75));
    CHECK(partial.recall == doctest::Approx(0.75));
    CHECK(partial.f1 == doctest::Approx(0.75));

    CHECK_THROWS_AS(rouge_l({}, same), EmptyInputError);
}

TEST_CASE("rouge_l swap symmetry") {
    oracles::TestRng rng(31337);
    const char* vocab[] = {"w0", "w1", "w2", "w3", "w4", "w5"};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> a, b;
        int la = rng.uniform(1, 10), lb = rng.uniform(1, 10);
        for (int i = 0; i < la; ++i) a.push_back(vocab[rng.uniform(0, 5)]);
        for (int i = 0; i < lb; ++i) b.push_back(vocab[rng.uniform(0, 5)]);
        RougeL fwd = rouge_l(a, b);
        RougeL rev = rouge_l(b, a);
        CHECK(fwd.f1 == doctest::Approx(rev.f1).epsilon(1e-12));
        CHECK(fwd.precision == doctest::Approx(rev.recall).epsilon(1e-12));
        CHECK(fwd.recall == doctest::Approx(rev.precision).epsilon(1e-12));
    }
}

TEST_CASE("extraction fidelity") {
    judge::AtomicSet verbatim;
    verbatim.strengths = {"the method is simple", "results are strong"};
    verbatim.weaknesses = {"the proof of lemma two is wrong"};
    std::string source =
        "The method is simple. Results are strong. The proof of lemma two is wrong.";
    auto fidelity = extraction_fidelity(verbatim, source);
    REQUIRE(fidelity.has_value());
    CHECK(*fidelity == doctest::Approx(1.0));

    judge::AtomicSet off_source;
    off_source.strengths = {"qqq zzz www"};
    auto zero = extraction_fidelity(off_source, source);
    REQUIRE(zero.has_value());
    CHECK(*zero == doctest::Approx(0.0));

    judge::AtomicSet empty;
    CHECK(!extraction_fidelity(empty, source).has_value());
}

TEST_CASE("containment stats") {
    std::vector<std::vector<std::string>> identical = {toks({"a", "b"}), toks({"a", "b"})};
    auto stats = containment_stats(identical);
    REQUIRE(stats.has_value());
    CHECK(stats->contained_fraction == doctest::Approx(1.0));
    CHECK(stats->mean_pairwise_rouge_l == doctest::Approx(1.0));

    std::vector<std::vector<std::string>> disjoint = {toks({"a", "b"}), toks({"c", "d"})};
    auto none = containment_stats(disjoint);
    REQUIRE(none.has_value());
    CHECK(none->contained_fraction == doctest::Approx(0.0));

    // Short item subsumed by a longer one, not vice versa.
    std::vector<std::vector<std::string>> nested = {
        toks({"a", "b"}), toks({"a", "b", "c", "d", "e"})};
    auto sub = containment_stats(nested);
    REQUIRE(sub.has_value());
    CHECK(sub->contained_fraction == doctest::Approx(0.5));

    std::vector<std::vector<std::string>> single = {toks({"a"})};
    CHECK(!containment_stats(single).has_value());
}

TEST_CASE("coverage aggregates: corner cases") {
    std::vector<std::vector<bool>> all_true(2, std::vector<bool>(3, true));
    CoverageResult full = coverage_from_matrix(all_true);
    CHECK(*full.atomic_recall == doctest::Approx(1.0));
    CHECK(*full.precision == doctest::Approx(1.0));
    CHECK(*full.mapping_density == doctest::Approx(3.0));
    CHECK(*full.compaction_ratio == doctest::Approx(2.0));

    std::vector<std::vector<bool>> all_false(2, std::vector<bool>(3, false));
    CoverageResult nothing = coverage_from_matrix(all_false);
    CHECK(*nothing.atomic_recall == doctest::Approx(0.0));
    CHECK(*nothing.precision == doctest::Approx(0.0));
    CHECK(*nothing.mapping_density == doctest::Approx(0.0));
    CHECK(*nothing.compaction_ratio == doctest::Approx(0.0));
}

TEST_CASE("coverage aggregates match brute-force scans on random matrices") {
    oracles::TestRng rng(606);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 8));
        std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 8));
        std::vector<std::vector<bool>> matrix(rows, std::vector<bool>(cols, false));
        for (auto& row : matrix)
            for (std::size_t j = 0; j < cols; ++j) row[j] = rng.uniform(0, 1) == 1;

        CoverageResult result = coverage_from_matrix(matrix);
        oracles::CoverageScan expected = oracles::coverage_scan(matrix);
        REQUIRE(result.atomic_recall.has_value());
        CHECK(*result.atomic_recall == *expected.recall);
        CHECK(*result.precision == *expected.precision);
        CHECK(*result.mapping_density == *expected.density);
        CHECK(*result.compaction_ratio == *expected.compaction);

        // recall * |human| is an integer: the number of covered rows.
        double covered = *result.atomic_recall * double(rows);
        CHECK(std::abs(covered - std::round(covered)) < 1e-9);
    }
}

TEST_CASE("adding a generated item never hurts recall or density") {
    oracles::TestRng rng(707);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 6));
        std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 6));
        std::vector<std::vector<bool>> matrix(rows, std::vector<bool>(cols, false));
        for (auto& row : matrix)
            for (std::size_t j = 0; j < cols; ++j) row[j] = rng.uniform(0, 1) == 1;
        CoverageResult before = coverage_from_matrix(matrix);

        std::vector<std::vector<bool>> wider = matrix;
        for (auto& row : wider) row.push_back(rng.uniform(0, 1) == 1);
        CoverageResult after = coverage_from_matrix(wider);

        CHECK(*after.atomic_recall >= *before.atomic_recall - 1e-12);
        CHECK(*after.mapping_density >= *before.mapping_density - 1e-12);
    }
}

TEST_CASE("coverage_metrics with the identity judge on itself is perfect") {
    IdentityJudge judge;
    std::vector<std::string> items = {"first point", "second point", "third point"};
    CoverageResult result = coverage_metrics(items, items, judge);
    CHECK(*result.atomic_recall == doctest::Approx(1.0));
    CHECK(*result.precision == doctest::Approx(1.0));
}

TEST_CASE("parallel matrix fill equals serial fill") {
    class WideIdentityJudge : public IdentityJudge {
    public:
        unsigned max_parallel() const override { return 8; }
    } wide;
    IdentityJudge narrow;
    std::vector<std::string> human, generated;
    for (int i = 0; i < 7; ++i) human.push_back("h" + std::to_string(i % 3));
    for (int i = 0; i < 6; ++i) generated.push_back("h" + std::to_string(i % 4));
    CoverageResult parallel = coverage_metrics(human, generated, wide);
    CoverageResult serial = coverage_metrics(human, generated, narrow);
    CHECK(parallel.match_matrix == serial.match_matrix);
    CHECK(*parallel.atomic_recall == *serial.atomic_recall);
    CHECK(*parallel.compaction_ratio == *serial.compaction_ratio);
}

TEST_CASE("coverage_metrics via the stub judge") {
    judge::StubJudge stub;
    std::vector<std::string> human = {"the proof of Lemma 2 is wrong"};
    std::vector<std::string> generated = {"figures are blurry"};
    CoverageResult result = coverage_metrics(human, generated, stub);
    CHECK(*result.atomic_recall == doctest::Approx(0.0));

    std::vector<std::string> same_text = {"the proof of Lemma 2 is wrong"};
    CoverageResult matched = coverage_metrics(human, same_text, stub);
    CHECK(*matched.atomic_recall == doctest::Approx(1.0));
}

TEST_CASE("count ratios and ws ratio") {
    judge::AtomicSet human;
    human.weaknesses = {"w1", "w2"};
    human.strengths = {"s1", "s2", "s3"};
    judge::AtomicSet generated;
    generated.weaknesses = {"a", "b", "c", "d", "e"};
    generated.strengths = {"x", "y", "z"};

    CountRatios ratios = count_ratios(human, generated);
    CHECK(*ratios.ratio_w == doctest::Approx(2.5));
    CHECK(*ratios.ratio_s == doctest::Approx(1.0));
    CHECK(ratios.diff_w == doctest::Approx(3.0));
    CHECK(ratios.diff_s == doctest::Approx(0.0));
    CHECK(*ratios.ratio_total == doctest::Approx(8.0 / 5.0));

    CountRatios same = count_ratios(human, human);
    CHECK(*same.ratio_w == doctest::Approx(1.0));
    CHECK(*same.ratio_s == doctest::Approx(1.0));
    CHECK(same.diff_w == doctest::Approx(0.0));

    judge::AtomicSet empty_human;
    CountRatios missing = count_ratios(empty_human, generated);
    CHECK(!missing.ratio_w.has_value());
    CHECK(!missing.ratio_s.has_value());

    judge::AtomicSet balanced;
    balanced.weaknesses = {"a", "b", "c"};
    balanced.strengths = {"d", "e", "f"};
    CHECK(*ws_ratio(balanced) == doctest::Approx(1.0));

    judge::AtomicSet no_strengths;
    no_strengths.weaknesses = {"a", "b", "c", "d"};
    CHECK(!ws_ratio(no_strengths).has_value());
}
