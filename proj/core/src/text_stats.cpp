#include "revbench/text_stats.hpp"

#include "revbench/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace revbench::textstats {

namespace {

bool is_vowel(char c) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
        case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
            return true;
        default:
            return false;
    }
}

// Bytes >= 0x80 are UTF-8 lead/continuation bytes inside words ("naïve");
// treat them as letters so multi-byte words stay single tokens.
bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c == '\'' || c == '-' || c >= 0x80;
}

bool is_alnum_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

std::string fold_case(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Sentence terminators are suppressed after these tokens ("e.g.", "Fig. 3").
const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> abbr = {
        "e.g", "i.e", "etc", "cf", "vs", "al", "resp", "approx", "ca",
        "fig", "figs", "eq", "eqs", "sec", "secs", "tab", "thm", "lem",
        "cor", "def", "prop", "no", "nos", "vol", "pp", "p",
        "dr", "mr", "mrs", "ms", "prof", "st",
    };
    return abbr;
}

bool is_closing(char c) {
    return c == ')' || c == ']' || c == '"' || c == '\'';
}

} // namespace

std::size_t count_syllables(std::string_view word) {
    std::size_t groups = 0;
    bool in_group = false;
    for (char c : word) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    if (groups == 0) return 1;

    std::size_t n = word.size();
    if (n >= 2 && std::tolower(static_cast<unsigned char>(word[n - 1])) == 'e') {
        char prev = static_cast<char>(std::tolower(static_cast<unsigned char>(word[n - 2])));
        bool consonant_le = prev == 'l' && n >= 3 &&
                            !is_vowel(static_cast<char>(std::tolower(static_cast<unsigned char>(word[n - 3]))));
        if (!is_vowel(prev) && !consonant_le && groups > 1) --groups;
    }
    return std::max<std::size_t>(groups, 1);
}

std::string strip_markdown(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c == '#' || c == '*' || c == '`') c = ' ';
    }
    return out;
}

TokenizedText tokenize(std::string_view text) {
    return tokenize(text, count_syllables);
}

TokenizedText tokenize(std::string_view text, const SyllableCounter& syllables) {
    TokenizedText tt;
    std::string clean = strip_markdown(text);

    // Word tokens.
    std::size_t i = 0;
    std::vector<std::size_t> token_end;  // byte offset just past each token
    while (i < clean.size()) {
        if (!is_word_char(static_cast<unsigned char>(clean[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < clean.size() && is_word_char(static_cast<unsigned char>(clean[i]))) ++i;
        std::string_view run(clean.data() + start, i - start);
        // Trim stray apostrophes/hyphens and require an alphanumeric.
        std::size_t b = 0, e = run.size();
        while (b < e && !is_alnum_byte(static_cast<unsigned char>(run[b]))) ++b;
        while (e > b && !is_alnum_byte(static_cast<unsigned char>(run[e - 1]))) --e;
        if (b == e) continue;
        std::string token(run.substr(b, e - b));
        tt.syllables += syllables(token);
        tt.types.insert(fold_case(token));
        tt.tokens.push_back(std::move(token));
        token_end.push_back(start + e);
    }

    // Sentence boundaries.
    std::size_t boundaries = 0;
    for (std::size_t pos = 0; pos < clean.size(); ++pos) {
        char c = clean[pos];
        if (c != '.' && c != '!' && c != '?') continue;
        std::size_t after = pos + 1;
        while (after < clean.size() && is_closing(clean[after])) ++after;
        bool at_break = after >= clean.size() ||
                        std::isspace(static_cast<unsigned char>(clean[after]));
        if (!at_break) continue;
        if (c == '.') {
            // Word immediately before the period, including internal dots
            // so "e.g." is seen whole.
            std::size_t w = pos;
            while (w > 0) {
                char p = clean[w - 1];
                if (is_word_char(static_cast<unsigned char>(p)) || p == '.') --w;
                else break;
            }
            std::string before = fold_case(std::string_view(clean.data() + w, pos - w));
            while (!before.empty() && before.front() == '.') before.erase(before.begin());
            if (abbreviations().count(before)) continue;
            if (before.size() == 1 && std::isalpha(static_cast<unsigned char>(before[0]))) continue;
        }
        ++boundaries;
    }
    tt.sentences = boundaries;
    if (!tt.tokens.empty()) {
        // Trailing content without a terminator still forms a sentence.
        std::size_t last_end = token_end.back();
        bool terminated = false;
        for (std::size_t pos = last_end; pos < clean.size(); ++pos) {
            char c = clean[pos];
            if (c == '.' || c == '!' || c == '?') { terminated = true; break; }
            if (!std::isspace(static_cast<unsigned char>(c)) && !is_closing(c)) break;
        }
        if (!terminated || boundaries == 0) {
            if (boundaries == 0) tt.sentences = 1;
            else if (!terminated) ++tt.sentences;
        }
    }
    return tt;
}

double type_token_ratio(const TokenizedText& tt) {
    if (tt.tokens.empty()) throw DegenerateInputError("type_token_ratio: no tokens");
    return static_cast<double>(tt.types.size()) / static_cast<double>(tt.tokens.size());
}

double fre(const TokenizedText& tt) {
    if (tt.tokens.empty() || tt.sentences == 0)
        throw DegenerateInputError("fre: requires W > 0 and S > 0");
    double w = static_cast<double>(tt.tokens.size());
    double s = static_cast<double>(tt.sentences);
    double sy = static_cast<double>(tt.syllables);
    return 206.835 - 1.015 * (w / s) - 84.6 * (sy / w);
}

double fkg(const TokenizedText& tt) {
    if (tt.tokens.empty() || tt.sentences == 0)
        throw DegenerateInputError("fkg: requires W > 0 and S > 0");
    double w = static_cast<double>(tt.tokens.size());
    double s = static_cast<double>(tt.sentences);
    double sy = static_cast<double>(tt.syllables);
    return 0.39 * (w / s) + 11.8 * (sy / w) - 15.59;
}

ReadabilityRow readability(const TokenizedText& tt) {
    ReadabilityRow row;
    row.tkc = tt.tokens.size();
    row.ttr = type_token_ratio(tt);
    row.fre = fre(tt);
    row.fkg = fkg(tt);
    return row;
}

} // namespace revbench::textstats
