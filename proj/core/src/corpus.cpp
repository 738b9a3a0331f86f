#include "revbench/corpus.hpp"

#include "revbench/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace revbench::corpus {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string fold(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void validate_scale(const RatingScale& scale) {
    if (scale.levels.size() < 2)
        throw ScaleError("scale " + std::string(to_string(scale.venue)) + " " +
                         std::to_string(scale.year) + ": fewer than 2 levels");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < scale.levels.size(); ++i) {
        if (i > 0 && scale.levels[i].value <= scale.levels[i - 1].value)
            throw ScaleError("scale values not strictly increasing");
        if (!labels.insert(fold(scale.levels[i].label)).second)
            throw ScaleError("duplicate scale label: " + scale.levels[i].label);
    }
}

RatingScale numeric_scale(Venue venue, int year, ScaleKind kind, int lo, int hi) {
    RatingScale s{venue, year, kind, {}};
    for (int v = lo; v <= hi; ++v) s.levels.push_back({std::to_string(v), v});
    return s;
}

void attach_labels(RatingScale& s, const std::vector<ScaleLevel>& named) {
    for (const ScaleLevel& lvl : named) {
        for (ScaleLevel& existing : s.levels) {
            if (existing.value == lvl.value) existing.label = lvl.label;
        }
    }
}

const std::vector<ScaleLevel>& iclr_rating_labels() {
    static const std::vector<ScaleLevel> labels = {
        {"1: strong reject", 1},
        {"3: reject, not good enough", 3},
        {"5: marginally below the acceptance threshold", 5},
        {"6: marginally above the acceptance threshold", 6},
        {"8: accept, good paper", 8},
        {"10: strong accept, should be highlighted at the conference", 10},
    };
    return labels;
}

const std::vector<ScaleLevel>& neurips6_rating_labels() {
    static const std::vector<ScaleLevel> labels = {
        {"1: Strong Reject", 1},
        {"2: Reject", 2},
        {"3: Borderline reject", 3},
        {"4: Borderline accept", 4},
        {"5: Accept", 5},
        {"6: Strong Accept", 6},
    };
    return labels;
}

const std::vector<ScaleLevel>& confidence_labels() {
    static const std::vector<ScaleLevel> labels = {
        {"1: Educated guess", 1},
        {"2: Willing to defend", 2},
        {"3: Fairly confident", 3},
        {"4: Confident, but not absolutely certain", 4},
        {"5: Absolutely certain", 5},
    };
    return labels;
}

json parse_line(const std::filesystem::path& file, std::size_t line_no, const std::string& line) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(file.string(), line_no, e.what());
    }
}

template <typename Fn>
void for_each_jsonl(const std::filesystem::path& file, bool required, Fn&& fn) {
    std::ifstream in(file);
    if (!in) {
        if (required) throw ParseError(file.string(), 0, "cannot open file");
        return;
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        fn(parse_line(file, line_no, line), line_no);
    }
}

template <typename T>
T require_field(const json& j, const char* key, const std::filesystem::path& file,
                std::size_t line) {
    if (!j.contains(key))
        throw ParseError(file.string(), line, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(file.string(), line, std::string("field '") + key + "': " + e.what());
    }
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Fisher-Yates with an explicit generator so sampling is identical on every
// platform (std::shuffle's draw sequence is implementation-defined).
void deterministic_shuffle(std::vector<std::string>& items, std::uint64_t& state) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::uint64_t j = splitmix64(state) % i;
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace

std::string_view to_string(Venue v) {
    return v == Venue::ICLR ? "ICLR" : "NeurIPS";
}

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::accept: return "accept";
        case Decision::reject: return "reject";
        case Decision::withdrawn: return "withdrawn";
        case Decision::unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(PromptKind p) {
    switch (p) {
        case PromptKind::none: return "none";
        case PromptKind::guidelines: return "guidelines";
        case PromptKind::extended: return "extended";
        case PromptKind::original: return "original";
    }
    return "none";
}

std::string_view to_string(ScaleKind k) {
    return k == ScaleKind::rating ? "rating" : "confidence";
}

std::string_view to_string(Era e) {
    return e == Era::pre_llm ? "pre_llm" : "post_llm";
}

Venue venue_from_string(std::string_view s) {
    std::string f = fold(s);
    if (f == "iclr") return Venue::ICLR;
    if (f == "neurips") return Venue::NeurIPS;
    throw ParseError("<venue>", 0, "unknown venue: " + std::string(s));
}

Decision decision_from_string(std::string_view s) {
    std::string f = fold(s);
    if (f == "accept") return Decision::accept;
    if (f == "reject") return Decision::reject;
    if (f == "withdrawn") return Decision::withdrawn;
    if (f == "unknown") return Decision::unknown;
    throw ParseError("<decision>", 0, "unknown decision: " + std::string(s));
}

PromptKind prompt_kind_from_string(std::string_view s) {
    std::string f = fold(s);
    if (f == "none") return PromptKind::none;
    if (f == "guidelines") return PromptKind::guidelines;
    if (f == "extended") return PromptKind::extended;
    if (f == "original") return PromptKind::original;
    throw ParseError("<prompt_kind>", 0, "unknown prompt kind: " + std::string(s));
}

ScaleKind scale_kind_from_string(std::string_view s) {
    std::string f = fold(s);
    if (f == "rating") return ScaleKind::rating;
    if (f == "confidence") return ScaleKind::confidence;
    throw ParseError("<scale_kind>", 0, "unknown scale kind: " + std::string(s));
}

std::string to_string(const Source& s) {
    return s.human ? "human" : s.model;
}

Source source_from_string(std::string_view s) {
    if (fold(s) == "human") return Source::make_human();
    if (s.empty()) throw ParseError("<source>", 0, "empty source");
    return Source::make_model(std::string(s));
}

std::optional<std::string> ReviewRecord::section(std::string_view name) const {
    auto it = sections.find(std::string(name));
    if (it == sections.end()) return std::nullopt;
    return it->second;
}

bool RatingScale::has_value(int v) const {
    return std::any_of(levels.begin(), levels.end(),
                       [&](const ScaleLevel& l) { return l.value == v; });
}

const PaperRecord* Corpus::find_paper(std::string_view paper_id) const {
    for (const PaperRecord& p : papers)
        if (p.paper_id == paper_id) return &p;
    return nullptr;
}

const RatingScale* Corpus::find_scale(Venue venue, int year, ScaleKind kind) const {
    for (const RatingScale& s : scales)
        if (s.venue == venue && s.year == year && s.kind == kind) return &s;
    return nullptr;
}

std::vector<RatingScale> default_scales() {
    std::vector<RatingScale> out;
    for (int year = 2021; year <= 2025; ++year) {
        RatingScale iclr = numeric_scale(Venue::ICLR, year, ScaleKind::rating, 1, 10);
        attach_labels(iclr, iclr_rating_labels());
        out.push_back(std::move(iclr));

        if (year == 2025) {
            RatingScale neurips{Venue::NeurIPS, year, ScaleKind::rating, neurips6_rating_labels()};
            out.push_back(std::move(neurips));
        } else {
            out.push_back(numeric_scale(Venue::NeurIPS, year, ScaleKind::rating, 1, 10));
        }

        for (Venue venue : {Venue::ICLR, Venue::NeurIPS}) {
            RatingScale conf = numeric_scale(venue, year, ScaleKind::confidence, 1, 5);
            attach_labels(conf, confidence_labels());
            out.push_back(std::move(conf));
        }
    }
    return out;
}

int normalize_rating(std::string_view raw_label, const RatingScale& scale) {
    std::string needle = fold(trim(raw_label));
    if (needle.empty()) throw UnknownLabelError("empty rating label");
    for (const ScaleLevel& level : scale.levels) {
        if (fold(trim(level.label)) == needle) return level.value;
    }
    // Leading-integer fallback: "8: accept, good paper" -> 8.
    std::size_t i = 0;
    while (i < needle.size() && std::isdigit(static_cast<unsigned char>(needle[i]))) ++i;
    if (i > 0 && i <= 3) {
        int value = std::stoi(needle.substr(0, i));
        if (scale.has_value(value)) return value;
    }
    throw UnknownLabelError("unknown label '" + std::string(raw_label) + "' for scale " +
                            std::string(to_string(scale.venue)) + " " +
                            std::to_string(scale.year) + " " +
                            std::string(to_string(scale.kind)));
}

Era era_of(Venue venue, int year) {
    int boundary = venue == Venue::ICLR ? 2024 : 2023;
    return year >= boundary ? Era::post_llm : Era::pre_llm;
}

Corpus load_corpus(const std::filesystem::path& dir) {
    Corpus corpus;
    corpus.scales = default_scales();

    auto scales_path = dir / "scales.jsonl";
    for_each_jsonl(scales_path, /*required=*/false, [&](const json& j, std::size_t line) {
        RatingScale scale;
        scale.venue = venue_from_string(require_field<std::string>(j, "venue", scales_path, line));
        scale.year = require_field<int>(j, "year", scales_path, line);
        scale.kind =
            scale_kind_from_string(require_field<std::string>(j, "kind", scales_path, line));
        if (!j.contains("levels") || !j.at("levels").is_array())
            throw ParseError(scales_path.string(), line, "missing levels array");
        for (const json& lvl : j.at("levels")) {
            scale.levels.push_back({require_field<std::string>(lvl, "label", scales_path, line),
                                    require_field<int>(lvl, "value", scales_path, line)});
        }
        validate_scale(scale);
        // User scales replace the bundled default for the same key.
        std::erase_if(corpus.scales, [&](const RatingScale& s) {
            return s.venue == scale.venue && s.year == scale.year && s.kind == scale.kind;
        });
        corpus.scales.push_back(std::move(scale));
    });

    auto papers_path = dir / "papers.jsonl";
    std::unordered_set<std::string> paper_ids;
    for_each_jsonl(papers_path, /*required=*/true, [&](const json& j, std::size_t line) {
        PaperRecord p;
        p.paper_id = require_field<std::string>(j, "paper_id", papers_path, line);
        p.venue = venue_from_string(require_field<std::string>(j, "venue", papers_path, line));
        p.year = require_field<int>(j, "year", papers_path, line);
        p.title = require_field<std::string>(j, "title", papers_path, line);
        p.decision =
            decision_from_string(require_field<std::string>(j, "decision", papers_path, line));
        if (p.year < 2013 || p.year > 2100)
            throw ParseError(papers_path.string(), line,
                             "year " + std::to_string(p.year) + " outside [2013, 2100]");
        if (!paper_ids.insert(p.paper_id).second)
            throw ParseError(papers_path.string(), line, "duplicate paper_id " + p.paper_id);
        corpus.papers.push_back(std::move(p));
    });

    std::unordered_map<std::string, const PaperRecord*> paper_index;
    for (const PaperRecord& p : corpus.papers) paper_index[p.paper_id] = &p;

    auto reviews_path = dir / "reviews.jsonl";
    std::unordered_set<std::string> review_ids;
    for_each_jsonl(reviews_path, /*required=*/true, [&](const json& j, std::size_t line) {
        ReviewRecord r;
        r.review_id = require_field<std::string>(j, "review_id", reviews_path, line);
        r.paper_id = require_field<std::string>(j, "paper_id", reviews_path, line);
        r.source = source_from_string(require_field<std::string>(j, "source", reviews_path, line));
        r.prompt_kind = prompt_kind_from_string(
            require_field<std::string>(j, "prompt_kind", reviews_path, line));
        if (!review_ids.insert(r.review_id).second)
            throw ParseError(reviews_path.string(), line, "duplicate review_id " + r.review_id);
        if (r.source.human && r.prompt_kind != PromptKind::none)
            throw ParseError(reviews_path.string(), line,
                             "human review " + r.review_id + " must have prompt_kind none");

        auto it = paper_index.find(r.paper_id);
        if (it == paper_index.end())
            throw ReferentialError("review " + r.review_id + " references unknown paper_id " +
                                   r.paper_id);
        const PaperRecord& paper = *it->second;

        if (j.contains("sections")) {
            for (auto& [key, value] : j.at("sections").items()) {
                std::string text = value.is_string() ? value.get<std::string>() : std::string();
                if (!trim(text).empty()) r.sections[key] = text;
            }
        }
        if (j.contains("full_text") && j.at("full_text").is_string()) {
            r.full_text = j.at("full_text").get<std::string>();
        } else {
            std::string joined;
            for (const char* name : kSectionNames) {
                auto sec = r.section(name);
                if (!sec) continue;
                if (!joined.empty()) joined += "\n\n";
                joined += *sec;
            }
            r.full_text = std::move(joined);
        }

        auto load_score = [&](const char* raw_key, const char* num_key, ScaleKind kind,
                              std::optional<std::string>& raw_out, std::optional<int>& num_out,
                              bool flag_missing) {
            if (j.contains(raw_key) && j.at(raw_key).is_string())
                raw_out = j.at(raw_key).get<std::string>();
            const RatingScale* scale = corpus.find_scale(paper.venue, paper.year, kind);
            if (j.contains(num_key) && j.at(num_key).is_number_integer()) {
                int value = j.at(num_key).get<int>();
                if (scale == nullptr)
                    throw ScaleError("no registered " + std::string(to_string(kind)) +
                                     " scale for " + std::string(to_string(paper.venue)) + " " +
                                     std::to_string(paper.year));
                if (!scale->has_value(value))
                    throw ScaleError("review " + r.review_id + ": " +
                                     std::string(to_string(kind)) + " " + std::to_string(value) +
                                     " outside registered scale for " +
                                     std::string(to_string(paper.venue)) + " " +
                                     std::to_string(paper.year));
                num_out = value;
            } else if (raw_out) {
                if (scale == nullptr)
                    throw ScaleError("no registered " + std::string(to_string(kind)) +
                                     " scale for " + std::string(to_string(paper.venue)) + " " +
                                     std::to_string(paper.year));
                try {
                    num_out = normalize_rating(*raw_out, *scale);
                } catch (const UnknownLabelError&) {
                    if (flag_missing) r.score_missing = true;
                }
            }
        };
        load_score("raw_rating_label", "numeric_rating", ScaleKind::rating, r.raw_rating_label,
                   r.numeric_rating, /*flag_missing=*/true);
        load_score("raw_confidence_label", "numeric_confidence", ScaleKind::confidence,
                   r.raw_confidence_label, r.numeric_confidence, /*flag_missing=*/false);

        corpus.reviews.push_back(std::move(r));
    });

    return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "papers.jsonl");
        for (const PaperRecord& p : corpus.papers) {
            ordered_json j;
            j["paper_id"] = p.paper_id;
            j["venue"] = to_string(p.venue);
            j["year"] = p.year;
            j["title"] = p.title;
            j["decision"] = to_string(p.decision);
            out << j.dump() << "\n";
        }
    }
    {
        std::ofstream out(dir / "reviews.jsonl");
        for (const ReviewRecord& r : corpus.reviews) {
            ordered_json j;
            j["review_id"] = r.review_id;
            j["paper_id"] = r.paper_id;
            j["source"] = to_string(r.source);
            j["prompt_kind"] = to_string(r.prompt_kind);
            ordered_json sections = ordered_json::object();
            for (const char* name : kSectionNames) {
                auto sec = r.section(name);
                if (sec) sections[name] = *sec;
            }
            for (const auto& [key, value] : r.sections) {
                if (!sections.contains(key)) sections[key] = value;
            }
            j["sections"] = sections;
            j["full_text"] = r.full_text;
            if (r.raw_rating_label) j["raw_rating_label"] = *r.raw_rating_label;
            if (r.numeric_rating) j["numeric_rating"] = *r.numeric_rating;
            if (r.raw_confidence_label) j["raw_confidence_label"] = *r.raw_confidence_label;
            if (r.numeric_confidence) j["numeric_confidence"] = *r.numeric_confidence;
            out << j.dump() << "\n";
        }
    }
    {
        std::ofstream out(dir / "scales.jsonl");
        for (const RatingScale& s : corpus.scales) {
            ordered_json j;
            j["venue"] = to_string(s.venue);
            j["year"] = s.year;
            j["kind"] = to_string(s.kind);
            ordered_json levels = ordered_json::array();
            for (const ScaleLevel& lvl : s.levels) {
                levels.push_back(ordered_json{{"label", lvl.label}, {"value", lvl.value}});
            }
            j["levels"] = levels;
            out << j.dump() << "\n";
        }
    }
}

Corpus balanced_sample(const Corpus& corpus, std::size_t per_decision, std::uint64_t seed) {
    // Strata are the (venue, year) pairs that contain decided papers.
    std::map<std::pair<int, int>, std::pair<std::vector<std::string>, std::vector<std::string>>>
        strata;  // key: (venue ordinal, year) -> (accepted, rejected)
    for (const PaperRecord& p : corpus.papers) {
        if (p.decision != Decision::accept && p.decision != Decision::reject) continue;
        auto& bucket = strata[{static_cast<int>(p.venue), p.year}];
        (p.decision == Decision::accept ? bucket.first : bucket.second).push_back(p.paper_id);
    }

    std::uint64_t state = seed;
    std::unordered_set<std::string> selected;
    for (auto& [key, bucket] : strata) {
        auto& [accepted, rejected] = bucket;
        std::string stratum_name = std::string(to_string(static_cast<Venue>(key.first))) + " " +
                                   std::to_string(key.second);
        if (accepted.size() < per_decision || rejected.size() < per_decision)
            throw InsufficientPapersError(
                "stratum " + stratum_name + ": need " + std::to_string(per_decision) +
                " accepted and rejected papers, have " + std::to_string(accepted.size()) + "/" +
                std::to_string(rejected.size()));
        std::sort(accepted.begin(), accepted.end());
        std::sort(rejected.begin(), rejected.end());
        deterministic_shuffle(accepted, state);
        deterministic_shuffle(rejected, state);
        for (std::size_t i = 0; i < per_decision; ++i) {
            selected.insert(accepted[i]);
            selected.insert(rejected[i]);
        }
    }

    Corpus out;
    out.scales = corpus.scales;
    for (const PaperRecord& p : corpus.papers)
        if (selected.count(p.paper_id)) out.papers.push_back(p);
    for (const ReviewRecord& r : corpus.reviews)
        if (selected.count(r.paper_id)) out.reviews.push_back(r);
    return out;
}

} // namespace revbench::corpus
