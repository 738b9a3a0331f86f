#include "revbench/extraction.hpp"

#include "revbench/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

namespace revbench::extraction {

namespace {

// Pattern sources are kept in the original Python re syntax. They are the
// contract; do not "clean them up". Quirks (the like(ly)? alternative, the
// unescaped dots in some author atoms) are intentional.
constexpr const char* kReferencePattern =
    "[\\s(^\\[]("
    "("
    "[Ff]ig|[Ff]igures?|S|[Ss]ec|[Ss]ections?|[Ss]sec|[Ss]ub[\\s-]?sections?|"
    "[Ee]q|[Ee]quations?|[Tt]ab|[Tt]ables?|[Dd]ef|[Dd]efinitions?|[Dd][Bb]|"
    "[Dd]atabases?|[Dd][Ss]|[Dd]ata\\s?sets?|[Tt]hm|[Tt]heorems?|[Ll]em|"
    "[Ll]emmas?|[Cc]or|[Cc]orollar(y|ies)|[Pp]|[Pp]ages?|like(ly)?"
    ")"
    "\\.?\\s?"
    "("
    "[0-9]+(\\.[0-9]+)*|\\([0-9]+(\\.[0-9]+)*\\)"
    ")"
    "|in\\s[0-9]+(\\.[0-9]+)+"
    ")";

constexpr const char* kMlaPattern =
    "(?P<authors>(([A-Z][a-züö]*.?,?[\\s\\-])*(and\\s([A-Z][a-züö]*.?,?\\s){2})?)(et al\\.\\s)?)"
    "\\\"?(?P<title>[A-Za-z0-9\\s\\:\\-\\(\\),]*)\\.\\\"?"
    "\\s([A-Za-z\\s:-]*),(\\svol\\. \\d*,)?\\s(no\\. \\d*,\\s)?"
    "(?P<year>\\d{4})"
    "(,\\spp\\.\\s\\d*.\\d*)?\\.";

constexpr const char* kApaPattern =
    "(?P<authors>(([A-Z][a-züö]*\\.?,?[\\s\\-])*(&\\s([A-Z][a-züö]*.?,?\\s){2})?)(et al\\.\\s)?)"
    "(?P<year>\\(\\d{4}\\))\\."
    "(?P<title>[A-Za-z0-9\\s\\:\\-\\(\\),]*)\\.";

constexpr const char* kIeeePattern =
    "\\[\\d*\\]\\s"
    "(?P<authors>(([A-Z][a-züö]*.?,?[\\s\\-])*(and\\s([A-Z][a-züö]*.?,?\\s){2})?)(et al\\.,?\\s)?)"
    "\\\"?(?P<title>[A-Za-z0-9\\s\\:\\-\\(\\),]*),?\\.?\\\"?"
    "\\s.*\\(?"
    "(?P<year>\\d{4})\\)?\\.";

struct TranslatedPattern {
    std::string ecma;
    std::map<std::string, int> group_index;
};

// Rewrites Python (?P<name>...) groups as plain capturing groups and
// records which group number each name ends up with. Parentheses inside
// character classes do not open groups.
TranslatedPattern translate_python_pattern(std::string_view pattern) {
    TranslatedPattern out;
    int group = 0;
    bool in_class = false;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        char c = pattern[i];
        if (c == '\\' && i + 1 < pattern.size()) {
            out.ecma += c;
            out.ecma += pattern[i + 1];
            ++i;
            continue;
        }
        if (in_class) {
            if (c == ']') in_class = false;
            out.ecma += c;
            continue;
        }
        if (c == '[') {
            in_class = true;
            out.ecma += c;
            continue;
        }
        if (c == '(') {
            ++group;
            if (pattern.compare(i, 4, "(?P<") == 0) {
                std::size_t close = pattern.find('>', i + 4);
                out.group_index[std::string(pattern.substr(i + 4, close - i - 4))] = group;
                out.ecma += '(';
                i = close;
                continue;
            }
            out.ecma += c;
            continue;
        }
        out.ecma += c;
    }
    return out;
}

struct CitationMatcher {
    CitationStyle style;
    std::regex re;
    int authors_group;
    int title_group;
    int year_group;
};

const std::regex& reference_regex() {
    static const std::regex re(translate_python_pattern(kReferencePattern).ecma,
                               std::regex::ECMAScript);
    return re;
}

const std::vector<CitationMatcher>& citation_matchers() {
    static const std::vector<CitationMatcher> matchers = [] {
        std::vector<CitationMatcher> out;
        // Precedence order: IEEE > APA > MLA.
        for (auto [style, pattern] : {std::pair{CitationStyle::IEEE, kIeeePattern},
                                      std::pair{CitationStyle::APA, kApaPattern},
                                      std::pair{CitationStyle::MLA, kMlaPattern}}) {
            TranslatedPattern tp = translate_python_pattern(pattern);
            out.push_back(CitationMatcher{
                style,
                std::regex(tp.ecma, std::regex::ECMAScript),
                tp.group_index.at("authors"),
                tp.group_index.at("title"),
                tp.group_index.at("year"),
            });
        }
        return out;
    }();
    return matchers;
}

std::string trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

int parse_year(std::string_view group) {
    int year = 0;
    for (char c : group) {
        if (std::isdigit(static_cast<unsigned char>(c))) year = year * 10 + (c - '0');
    }
    return year;
}

XrefKind classify_keyword(std::string keyword) {
    std::transform(keyword.begin(), keyword.end(), keyword.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto starts = [&](std::string_view prefix) { return keyword.rfind(prefix, 0) == 0; };
    if (keyword.empty()) return XrefKind::other;             // the "in 3.2" branch
    if (starts("like")) return XrefKind::other;              // counted, not taxonomized
    if (starts("fig")) return XrefKind::figure;
    if (keyword == "s" || starts("sec") || starts("ssec") || starts("sub"))
        return XrefKind::section;
    if (starts("eq")) return XrefKind::equation;
    if (starts("tab")) return XrefKind::table;
    if (starts("def")) return XrefKind::definition;
    if (keyword == "db" || keyword == "ds" || starts("data"))
        return XrefKind::dataset;
    if (starts("th")) return XrefKind::theorem;
    if (starts("lem")) return XrefKind::lemma;
    if (starts("cor")) return XrefKind::corollary;
    if (keyword == "p" || starts("page")) return XrefKind::page;
    return XrefKind::other;
}

} // namespace

std::string_view to_string(XrefKind kind) {
    switch (kind) {
        case XrefKind::figure: return "figure";
        case XrefKind::section: return "section";
        case XrefKind::equation: return "equation";
        case XrefKind::table: return "table";
        case XrefKind::definition: return "definition";
        case XrefKind::theorem: return "theorem";
        case XrefKind::lemma: return "lemma";
        case XrefKind::corollary: return "corollary";
        case XrefKind::page: return "page";
        case XrefKind::dataset: return "dataset";
        case XrefKind::other: return "other";
    }
    return "other";
}

std::string_view to_string(CitationStyle style) {
    switch (style) {
        case CitationStyle::MLA: return "MLA";
        case CitationStyle::APA: return "APA";
        case CitationStyle::IEEE: return "IEEE";
    }
    return "MLA";
}

std::string_view to_string(XrefBin bin) {
    switch (bin) {
        case XrefBin::b0: return "0";
        case XrefBin::b1: return "1";
        case XrefBin::b2_5: return "2-5";
        case XrefBin::b_gt5: return ">5";
    }
    return "0";
}

std::string_view reference_pattern() { return kReferencePattern; }
std::string_view mla_pattern() { return kMlaPattern; }
std::string_view apa_pattern() { return kApaPattern; }
std::string_view ieee_pattern() { return kIeeePattern; }

std::vector<XrefMention> extract_xrefs(std::string_view text) {
    std::vector<XrefMention> out;
    auto begin = std::cregex_iterator(text.data(), text.data() + text.size(), reference_regex());
    for (auto it = begin; it != std::cregex_iterator(); ++it) {
        const std::cmatch& m = *it;
        XrefMention mention;
        mention.matched_text = m.str();
        mention.begin = static_cast<std::size_t>(m.position(0));
        mention.end = mention.begin + static_cast<std::size_t>(m.length(0));
        // Group 2 is the keyword alternation; absent for the "in 3.2" branch.
        mention.kind = m[2].matched ? classify_keyword(m[2].str()) : XrefKind::other;
        out.push_back(std::move(mention));
    }
    return out;
}

std::vector<CitationRecord> extract_citations(std::string_view text) {
    std::vector<CitationRecord> candidates;
    std::vector<int> precedence;  // lower wins
    int rank = 0;
    for (const CitationMatcher& matcher : citation_matchers()) {
        auto begin = std::cregex_iterator(text.data(), text.data() + text.size(), matcher.re);
        for (auto it = begin; it != std::cregex_iterator(); ++it) {
            const std::cmatch& m = *it;
            CitationRecord rec;
            rec.raw = m.str();
            rec.style = matcher.style;
            rec.authors = trimmed(m[matcher.authors_group].str());
            std::string title = trimmed(m[matcher.title_group].str());
            if (!title.empty()) rec.title = title;
            rec.year = parse_year(m[matcher.year_group].str());
            rec.begin = static_cast<std::size_t>(m.position(0));
            rec.end = rec.begin + static_cast<std::size_t>(m.length(0));
            candidates.push_back(std::move(rec));
            precedence.push_back(rank);
        }
        ++rank;
    }

    // Keep higher-precedence / leftmost / longest matches, dropping anything
    // that overlaps an already-kept span.
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (precedence[a] != precedence[b]) return precedence[a] < precedence[b];
        if (candidates[a].begin != candidates[b].begin) return candidates[a].begin < candidates[b].begin;
        return candidates[a].end > candidates[b].end;
    });
    std::vector<CitationRecord> kept;
    for (std::size_t idx : order) {
        const CitationRecord& rec = candidates[idx];
        bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const CitationRecord& k) {
            return rec.begin < k.end && k.begin < rec.end;
        });
        if (!overlaps) kept.push_back(rec);
    }
    std::sort(kept.begin(), kept.end(), [](const CitationRecord& a, const CitationRecord& b) {
        return a.begin < b.begin;
    });
    return kept;
}

XrefBin xref_bin(std::size_t count) {
    if (count == 0) return XrefBin::b0;
    if (count == 1) return XrefBin::b1;
    if (count <= 5) return XrefBin::b2_5;
    return XrefBin::b_gt5;
}

} // namespace revbench::extraction
