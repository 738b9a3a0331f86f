#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revbench::extraction {

enum class XrefKind {
    figure,
    section,
    equation,
    table,
    definition,
    theorem,
    lemma,
    corollary,
    page,
    dataset,
    other,
};

std::string_view to_string(XrefKind kind);

// One in-review mention of a manuscript element. The span covers the full
// pattern match (including the required leading delimiter character), so
// text.substr(begin, end - begin) == matched_text.
struct XrefMention {
    std::string matched_text;
    std::size_t begin = 0;
    std::size_t end = 0;
    XrefKind kind = XrefKind::other;
};

enum class CitationStyle { MLA, APA, IEEE };

std::string_view to_string(CitationStyle style);

struct CitationRecord {
    std::string raw;
    CitationStyle style = CitationStyle::MLA;
    std::string authors;
    std::optional<std::string> title;
    int year = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Canonical pattern sources, Python re syntax, kept byte-for-byte stable;
// the compiled matchers are derived from these strings mechanically (named
// groups rewritten as plain groups). Tests compare against embedded copies.
std::string_view reference_pattern();
std::string_view mla_pattern();
std::string_view apa_pattern();
std::string_view ieee_pattern();

// All non-overlapping matches of the reference pattern, scanned left to
// right. The size of the result is the review's cross-reference count.
// The like/likely alternative and the bare "in 3.2" form are kept in the
// count but tagged XrefKind::other.
std::vector<XrefMention> extract_xrefs(std::string_view text);

// Union of the three style patterns. Overlaps are resolved by style
// precedence IEEE > APA > MLA, then leftmost, then longest.
std::vector<CitationRecord> extract_citations(std::string_view text);

enum class XrefBin { b0, b1, b2_5, b_gt5 };

std::string_view to_string(XrefBin bin);

// 0 -> b0, 1 -> b1, 2..5 -> b2_5, >5 -> b_gt5.
XrefBin xref_bin(std::size_t count);

} // namespace revbench::extraction
