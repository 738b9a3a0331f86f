#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace revbench::textstats {

// Tokenization summary of one text: word tokens, case-folded distinct
// types, sentence count and total syllables.
struct TokenizedText {
    std::vector<std::string> tokens;
    std::set<std::string> types;
    std::size_t sentences = 0;
    std::size_t syllables = 0;

    std::size_t word_count() const { return tokens.size(); }
};

// Pluggable per-word syllable counter; the default is a vowel-group
// heuristic (see count_syllables). Tests inject a table-driven oracle.
using SyllableCounter = std::function<std::size_t(std::string_view)>;

// Default heuristic: count maximal runs of a,e,i,o,u,y; a trailing 'e'
// is dropped as silent unless it follows consonant+'l' ("-ble", "-tle")
// or dropping it would leave zero; result is floored at 1.
std::size_t count_syllables(std::string_view word);

// Replaces markdown markers (#, *, backticks) with spaces so they never
// form tokens. Generated reviews are markdown.
std::string strip_markdown(std::string_view text);

// Word tokens are maximal runs of letters/digits/apostrophes/hyphens
// containing at least one alphanumeric. Sentences end at . ! ? followed
// by optional closing quotes/brackets and whitespace or end of text,
// except after common abbreviations and single-letter initials.
// Markdown markers are stripped first. Empty text gives all-zero counts.
TokenizedText tokenize(std::string_view text);
TokenizedText tokenize(std::string_view text, const SyllableCounter& syllables);

// Distinct types over total tokens. Requires at least one token.
double type_token_ratio(const TokenizedText& tt);

// 206.835 - 1.015 (W/S) - 84.6 (Sy/W). Throws DegenerateInputError when
// W or S is zero.
double fre(const TokenizedText& tt);

// 0.39 (W/S) + 11.8 (Sy/W) - 15.59. Throws DegenerateInputError when
// W or S is zero.
double fkg(const TokenizedText& tt);

struct ReadabilityRow {
    std::size_t tkc = 0;
    double ttr = 0.0;
    double fre = 0.0;
    double fkg = 0.0;
};

// Convenience bundle; same preconditions as the individual functions.
ReadabilityRow readability(const TokenizedText& tt);

} // namespace revbench::textstats
