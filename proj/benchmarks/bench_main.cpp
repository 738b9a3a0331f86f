#include "revbench/agreement.hpp"
#include "revbench/coverage.hpp"
#include "revbench/extraction.hpp"
#include "revbench/stats.hpp"
#include "revbench/text_stats.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

namespace {

std::string make_review_text(std::size_t paragraphs) {
    std::string text;
    for (std::size_t i = 0; i < paragraphs; ++i) {
        text +=
            "The proposed method improves accuracy on three benchmarks. "
            "See Section 3.2 and Eq. (5) for the construction. "
            "The proof of Lemma 2 needs a tighter bound, as shown in Table 4. ";
    }
    return text;
}

void BM_Tokenize(benchmark::State& state) {
    std::string text = make_review_text(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(revbench::textstats::tokenize(text));
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(4)->Arg(16)->Arg(64);

void BM_ExtractXrefs(benchmark::State& state) {
    std::string text = make_review_text(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(revbench::extraction::extract_xrefs(text));
    }
}
BENCHMARK(BM_ExtractXrefs)->Arg(4)->Arg(16)->Arg(64);

void BM_ExtractCitations(benchmark::State& state) {
    std::string text;
    for (int i = 0; i < state.range(0); ++i) {
        text += "Prose before. Smith, A. (2020). Deep learning basics. More prose. ";
        text += "[3] J. Doe, \"A method,\" Proc. Conf. (2019). ";
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(revbench::extraction::extract_citations(text));
    }
}
BENCHMARK(BM_ExtractCitations)->Arg(1)->Arg(8);

void BM_Krippendorff(benchmark::State& state) {
    std::mt19937 rng(7);
    std::vector<std::pair<std::string, int>> ratings;
    for (int unit = 0; unit < state.range(0); ++unit) {
        int raters = 2 + int(rng() % 3);
        for (int r = 0; r < raters; ++r) {
            ratings.emplace_back("u" + std::to_string(unit), 1 + int(rng() % 10));
        }
    }
    auto matrix = revbench::agreement::RatingMatrix::from_ratings(ratings);
    for (auto _ : state) {
        benchmark::DoNotOptimize(revbench::agreement::krippendorff_ordinal(matrix));
    }
}
BENCHMARK(BM_Krippendorff)->Arg(100)->Arg(1000);

void BM_RougeL(benchmark::State& state) {
    std::vector<std::string> a, b;
    std::mt19937 rng(11);
    for (int i = 0; i < state.range(0); ++i) {
        a.push_back("tok" + std::to_string(rng() % 50));
        b.push_back("tok" + std::to_string(rng() % 50));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(revbench::coverage::rouge_l(a, b));
    }
}
BENCHMARK(BM_RougeL)->Arg(32)->Arg(256);

void BM_MannWhitneyExact(benchmark::State& state) {
    std::mt19937 rng(13);
    std::vector<double> a(static_cast<std::size_t>(state.range(0)));
    std::vector<double> b(static_cast<std::size_t>(state.range(0)));
    for (auto& v : a) v = double(rng() % 20);
    for (auto& v : b) v = double(rng() % 20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(revbench::stats::mann_whitney_u(a, b));
    }
}
BENCHMARK(BM_MannWhitneyExact)->Arg(10)->Arg(40)->Arg(100);

} // namespace

BENCHMARK_MAIN();
