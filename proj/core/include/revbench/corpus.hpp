#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revbench::corpus {

enum class Venue { ICLR, NeurIPS };
enum class Decision { accept, reject, withdrawn, unknown };
enum class PromptKind { none, guidelines, extended, original };
enum class ScaleKind { rating, confidence };
enum class Era { pre_llm, post_llm };

std::string_view to_string(Venue v);
std::string_view to_string(Decision d);
std::string_view to_string(PromptKind p);
std::string_view to_string(ScaleKind k);
std::string_view to_string(Era e);

Venue venue_from_string(std::string_view s);
Decision decision_from_string(std::string_view s);
PromptKind prompt_kind_from_string(std::string_view s);
ScaleKind scale_kind_from_string(std::string_view s);

// "human" or a model name; reviews from models carry their model id here.
struct Source {
    bool human = false;
    std::string model;  // empty iff human

    static Source make_human() { return Source{true, {}}; }
    static Source make_model(std::string name) { return Source{false, std::move(name)}; }
    bool operator==(const Source&) const = default;
};

std::string to_string(const Source& s);
Source source_from_string(std::string_view s);

struct PaperRecord {
    std::string paper_id;
    Venue venue = Venue::ICLR;
    int year = 0;
    std::string title;
    Decision decision = Decision::unknown;
};

// Review section keys, in canonical order.
inline constexpr const char* kSectionNames[] = {
    "summary", "strengths", "weaknesses", "questions", "limitations", "additional_feedback",
};

struct ReviewRecord {
    std::string review_id;
    std::string paper_id;
    Source source;
    PromptKind prompt_kind = PromptKind::none;
    std::map<std::string, std::string> sections;  // absent keys mean missing text
    std::string full_text;                        // stored, or joined from sections
    std::optional<std::string> raw_rating_label;
    std::optional<int> numeric_rating;
    std::optional<std::string> raw_confidence_label;
    std::optional<int> numeric_confidence;
    bool score_missing = false;  // rating label present but unparsable

    std::optional<std::string> section(std::string_view name) const;
};

struct ScaleLevel {
    std::string label;
    int value = 0;
};

// Ordered label -> value mapping for one (venue, year, kind).
struct RatingScale {
    Venue venue = Venue::ICLR;
    int year = 0;
    ScaleKind kind = ScaleKind::rating;
    std::vector<ScaleLevel> levels;  // values strictly increasing

    bool has_value(int v) const;
    int min_value() const { return levels.front().value; }
    int max_value() const { return levels.back().value; }
};

struct Corpus {
    std::vector<PaperRecord> papers;
    std::vector<ReviewRecord> reviews;
    std::vector<RatingScale> scales;

    const PaperRecord* find_paper(std::string_view paper_id) const;
    const RatingScale* find_scale(Venue venue, int year, ScaleKind kind) const;
};

// Built-in scales for ICLR 2021-2025 and NeurIPS 2021-2025: ratings 1-10
// (NeurIPS 2025 uses 1-6), confidence 1-5, with the descriptive labels the
// venues attach to each level. User scale files extend or override these.
std::vector<RatingScale> default_scales();

// Loads papers.jsonl / reviews.jsonl / scales.jsonl from the directory and
// validates the result: unique paper ids, resolvable references, ratings
// and confidences on registered scales. scales.jsonl is optional; defaults
// are always registered first.
Corpus load_corpus(const std::filesystem::path& dir);

// Inverse of load_corpus; line order is the in-memory order.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// Resolves a raw label against a scale: trimmed case-insensitive label
// match first, then a leading-integer fallback ("8: accept, good paper"
// resolves to 8). Throws UnknownLabelError when nothing matches.
int normalize_rating(std::string_view raw_label, const RatingScale& scale);

// Era boundary: ICLR is post-LLM from 2024, NeurIPS from 2023.
Era era_of(Venue venue, int year);

// Deterministic per-(venue, year) stratified sample with equal accepted and
// rejected paper counts. Throws InsufficientPapersError naming the first
// stratum that cannot supply per_decision papers of each decision.
Corpus balanced_sample(const Corpus& corpus, std::size_t per_decision, std::uint64_t seed);

} // namespace revbench::corpus
