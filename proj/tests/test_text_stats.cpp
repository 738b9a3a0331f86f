#include "revbench/text_stats.hpp"

#include "revbench/errors.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <map>

using namespace revbench;
using namespace revbench::textstats;

TEST_CASE("empty text yields zero counts") {
    TokenizedText tt = tokenize("");
    CHECK(tt.tokens.empty());
    CHECK(tt.sentences == 0);
    CHECK(tt.syllables == 0);
}

TEST_CASE("basic sentence and token counts") {
    TokenizedText tt = tokenize("The cat sat.");
    CHECK(tt.word_count() == 3);
    CHECK(tt.sentences == 1);
}

TEST_CASE("types are case-folded") {
    TokenizedText tt = tokenize("a a a b");
    CHECK(tt.word_count() == 4);
    CHECK(tt.types.size() == 2);
    CHECK(type_token_ratio(tt) == doctest::Approx(0.5));

    TokenizedText mixed = tokenize("The the THE");
    CHECK(mixed.types.size() == 1);
}

TEST_CASE("abbreviations do not end sentences") {
    TokenizedText tt = tokenize("See e.g. Fig. 3 for details. The results hold.");
    CHECK(tt.sentences == 2);

    TokenizedText initials = tokenize("A. Smith wrote it. B. Jones agreed.");
    CHECK(initials.sentences == 2);
}

TEST_CASE("unterminated trailing text counts as a sentence") {
    CHECK(tokenize("One. Two").sentences == 2);
    CHECK(tokenize("no punctuation at all").sentences == 1);
    CHECK(tokenize("Really?!").sentences == 1);
}

TEST_CASE("markdown markers are stripped") {
    TokenizedText tt = tokenize("## Strengths\n* **great** `code`");
    CHECK(tt.word_count() == 3);  // Strengths, great, code
    for (const auto& tok : tt.tokens) {
        CHECK(tok.find('#') == std::string::npos);
        CHECK(tok.find('*') == std::string::npos);
        CHECK(tok.find('`') == std::string::npos);
    }
}

TEST_CASE("hyphenated and apostrophe words stay single tokens") {
    TokenizedText tt = tokenize("state-of-the-art don't");
    CHECK(tt.word_count() == 2);
}

TEST_CASE("syllable heuristic") {
    CHECK(count_syllables("cat") == 1);
    CHECK(count_syllables("a") == 1);
    CHECK(count_syllables("readable") == 3);  // trailing consonant+le keeps its syllable
    CHECK(count_syllables("make") == 1);      // silent e dropped
    CHECK(count_syllables("apple") == 2);
    CHECK(count_syllables("file") == 1);
    CHECK(count_syllables("the") == 1);
    CHECK(count_syllables("xyzzy") == 2);  // y vowel, two runs
    CHECK(count_syllables("rhythm") == 1);
    CHECK(count_syllables("bcd") == 1);       // floor at 1
}

TEST_CASE("fre and fkg closed forms") {
    TokenizedText tt;
    tt.tokens = {"w", "w", "w"};
    tt.sentences = 1;
    tt.syllables = 3;
    CHECK(fre(tt) == doctest::Approx(119.19).epsilon(1e-9));
    CHECK(fkg(tt) == doctest::Approx(-2.62).epsilon(1e-9));

    TokenizedText unit;
    unit.tokens = {"w"};
    unit.sentences = 1;
    unit.syllables = 1;
    CHECK(fre(unit) == doctest::Approx(121.22).epsilon(1e-9));
    CHECK(fkg(unit) == doctest::Approx(-3.40).epsilon(1e-9));
}

TEST_CASE("degenerate input raises") {
    TokenizedText empty;
    CHECK_THROWS_AS(fre(empty), DegenerateInputError);
    CHECK_THROWS_AS(fkg(empty), DegenerateInputError);

    TokenizedText no_sentences;
    no_sentences.tokens = {"w"};
    no_sentences.sentences = 0;
    no_sentences.syllables = 1;
    CHECK_THROWS_AS(fre(no_sentences), DegenerateInputError);
}

TEST_CASE("injected syllable oracle drives fre/fkg exactly") {
    std::map<std::string, std::size_t> table = {
        {"the", 1}, {"proposed", 2}, {"method", 2}, {"improves", 2}, {"accuracy", 4},
    };
    SyllableCounter oracle = [&](std::string_view w) {
        auto it = table.find(std::string(w));
        return it == table.end() ? std::size_t{1} : it->second;
    };
    TokenizedText tt = tokenize("The proposed method improves accuracy.", oracle);
    REQUIRE(tt.word_count() == 5);
    REQUIRE(tt.sentences == 1);
    CHECK(tt.syllables == 11);
    double w = 5, s = 1, sy = 11;
    CHECK(fre(tt) == doctest::Approx(206.835 - 1.015 * (w / s) - 84.6 * (sy / w)).epsilon(1e-12));
    CHECK(fkg(tt) == doctest::Approx(0.39 * (w / s) + 11.8 * (sy / w) - 15.59).epsilon(1e-12));
}

TEST_CASE("scale invariance: duplicating all counts keeps fre/fkg fixed") {
    oracles::TestRng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        TokenizedText tt;
        std::size_t w = static_cast<std::size_t>(rng.uniform(1, 200));
        std::size_t s = static_cast<std::size_t>(rng.uniform(1, 20));
        std::size_t sy = w + static_cast<std::size_t>(rng.uniform(0, 100));
        tt.tokens.assign(w, "x");
        tt.sentences = s;
        tt.syllables = sy;
        TokenizedText doubled;
        doubled.tokens.assign(2 * w, "x");
        doubled.sentences = 2 * s;
        doubled.syllables = 2 * sy;
        CHECK(fre(tt) == doctest::Approx(fre(doubled)).epsilon(1e-12));
        CHECK(fkg(tt) == doctest::Approx(fkg(doubled)).epsilon(1e-12));
    }
}

TEST_CASE("ttr bounds and self-concatenation property") {
    oracles::TestRng rng(7);
    const char* words[] = {"alpha", "beta", "gamma", "delta", "epsilon"};
    for (int trial = 0; trial < 50; ++trial) {
        std::string text;
        int n = rng.uniform(1, 30);
        for (int i = 0; i < n; ++i) {
            text += words[rng.uniform(0, 4)];
            text += ' ';
        }
        TokenizedText tt = tokenize(text);
        double ttr = type_token_ratio(tt);
        CHECK(ttr > 0.0);
        CHECK(ttr <= 1.0);

        TokenizedText twice = tokenize(text + " " + text);
        CHECK(twice.types == tt.types);
        CHECK(type_token_ratio(twice) <= ttr + 1e-12);
    }
}

TEST_CASE("ttr is 1 iff all tokens distinct") {
    CHECK(type_token_ratio(tokenize("one two three")) == doctest::Approx(1.0));
    CHECK(type_token_ratio(tokenize("one one two")) < 1.0);
}
