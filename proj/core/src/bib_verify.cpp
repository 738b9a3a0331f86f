#include "revbench/bib_verify.hpp"

#include "revbench/errors.hpp"
#include "revbench/sha256.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <vector>

namespace revbench::bib {

namespace {

using json = nlohmann::json;

std::mutex cache_io_mutex;

struct SourceSpec {
    MatchSource id;
    std::string name;
};

const std::vector<SourceSpec>& sources() {
    static const std::vector<SourceSpec> specs = {
        {MatchSource::crossref, "crossref"},
        {MatchSource::openalex, "openalex"},
        {MatchSource::dblp, "dblp"},
    };
    return specs;
}

struct Candidate {
    std::string title;
    std::optional<int> year;
};

// Lifts (title, year) candidate pairs out of each API's response shape.
std::vector<Candidate> parse_candidates(MatchSource source, const std::string& body) {
    std::vector<Candidate> out;
    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception&) {
        return out;
    }
    try {
        switch (source) {
            case MatchSource::crossref: {
                for (const json& item : j.at("message").at("items")) {
                    Candidate c;
                    if (item.contains("title") && item["title"].is_array() &&
                        !item["title"].empty())
                        c.title = item["title"][0].get<std::string>();
                    if (item.contains("issued") && item["issued"].contains("date-parts")) {
                        const json& parts = item["issued"]["date-parts"];
                        if (parts.is_array() && !parts.empty() && parts[0].is_array() &&
                            !parts[0].empty() && parts[0][0].is_number())
                            c.year = parts[0][0].get<int>();
                    }
                    if (!c.title.empty()) out.push_back(std::move(c));
                }
                break;
            }
            case MatchSource::openalex: {
                for (const json& item : j.at("results")) {
                    Candidate c;
                    if (item.contains("title") && item["title"].is_string())
                        c.title = item["title"].get<std::string>();
                    else if (item.contains("display_name") && item["display_name"].is_string())
                        c.title = item["display_name"].get<std::string>();
                    if (item.contains("publication_year") && item["publication_year"].is_number())
                        c.year = item["publication_year"].get<int>();
                    if (!c.title.empty()) out.push_back(std::move(c));
                }
                break;
            }
            case MatchSource::dblp: {
                const json& hits = j.at("result").at("hits");
                if (!hits.contains("hit")) break;
                for (const json& hit : hits.at("hit")) {
                    const json& info = hit.at("info");
                    Candidate c;
                    if (info.contains("title") && info["title"].is_string())
                        c.title = info["title"].get<std::string>();
                    if (info.contains("year")) {
                        if (info["year"].is_string())
                            c.year = std::stoi(info["year"].get<std::string>());
                        else if (info["year"].is_number())
                            c.year = info["year"].get<int>();
                    }
                    if (!c.title.empty()) out.push_back(std::move(c));
                }
                break;
            }
        }
    } catch (const json::exception&) {
        // Unexpected shape: treat as no candidates.
    }
    return out;
}

std::string query_url(MatchSource source, const std::string& query,
                      const std::string& contact) {
    std::string q = url_encode(query);
    switch (source) {
        case MatchSource::crossref: {
            std::string url = "https://api.crossref.org/works?rows=5&query.title=" + q;
            if (!contact.empty()) url += "&mailto=" + url_encode(contact);
            return url;
        }
        case MatchSource::openalex:
            return "https://api.openalex.org/works?per-page=5&search=" + q;
        case MatchSource::dblp:
            return "https://dblp.org/search/publ/api?format=json&h=5&q=" + q;
    }
    return {};
}

json result_to_json(const std::string& key, const VerificationResult& result) {
    json j;
    j["key"] = key;
    j["status"] = std::string(to_string(result.status));
    if (result.matched_source) j["matched_source"] = std::string(to_string(*result.matched_source));
    if (result.matched_title) j["matched_title"] = *result.matched_title;
    j["similarity"] = result.similarity;
    j["timestamp"] = 0;  // filled on write
    return j;
}

MatchSource source_from_name(const std::string& name) {
    for (const SourceSpec& spec : sources())
        if (spec.name == name) return spec.id;
    throw ParseError("<cache>", 0, "unknown source name " + name);
}

} // namespace

std::string_view to_string(MatchSource source) {
    switch (source) {
        case MatchSource::crossref: return "crossref";
        case MatchSource::openalex: return "openalex";
        case MatchSource::dblp: return "dblp";
    }
    return "crossref";
}

std::string_view to_string(VerifyStatus status) {
    switch (status) {
        case VerifyStatus::verified: return "verified";
        case VerifyStatus::unverified: return "unverified";
        case VerifyStatus::error: return "error";
    }
    return "error";
}

std::string normalize_title(std::string_view title) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : title) {
        if (std::isalnum(c)) {
            if (pending_space && !out.empty()) out += ' ';
            pending_space = false;
            out += static_cast<char>(std::tolower(c));
        } else {
            pending_space = true;
        }
    }
    return out;
}

double title_similarity(std::string_view a, std::string_view b) {
    std::string na = normalize_title(a);
    std::string nb = normalize_title(b);
    if (na.empty() && nb.empty()) return 1.0;
    std::size_t la = na.size(), lb = nb.size();
    std::vector<std::size_t> prev(lb + 1), curr(lb + 1);
    for (std::size_t j = 0; j <= lb; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= la; ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= lb; ++j) {
            std::size_t cost = na[i - 1] == nb[j - 1] ? 0 : 1;
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + cost});
        }
        std::swap(prev, curr);
    }
    double dist = static_cast<double>(prev[lb]);
    return 1.0 - dist / static_cast<double>(std::max(la, lb));
}

std::string citation_key(const extraction::CitationRecord& citation) {
    std::string base = citation.title ? "title:" + normalize_title(*citation.title)
                                      : "authors:" + normalize_title(citation.authors);
    return base + "|" + std::to_string(citation.year);
}

BibCache::BibCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<VerificationResult> BibCache::get(
    const std::string& key, const extraction::CitationRecord& citation) const {
    std::filesystem::path path = dir_ / (sha256_hex(key) + ".json");
    std::lock_guard<std::mutex> lock(cache_io_mutex);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
    } catch (const json::exception&) {
        return std::nullopt;  // unreadable entry behaves like a miss
    }
    VerificationResult result;
    result.citation = citation;
    std::string status = j.value("status", "unverified");
    result.status = status == "verified" ? VerifyStatus::verified : VerifyStatus::unverified;
    if (j.contains("matched_source"))
        result.matched_source = source_from_name(j["matched_source"].get<std::string>());
    if (j.contains("matched_title"))
        result.matched_title = j["matched_title"].get<std::string>();
    result.similarity = j.value("similarity", 0.0);
    return result;
}

void BibCache::put(const std::string& key, const VerificationResult& result) {
    std::filesystem::create_directories(dir_);
    std::filesystem::path path = dir_ / (sha256_hex(key) + ".json");
    json j = result_to_json(key, result);
    j["timestamp"] = static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    std::lock_guard<std::mutex> lock(cache_io_mutex);
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

Verifier::Verifier(VerifierConfig config, std::shared_ptr<HttpTransport> transport,
                   std::shared_ptr<Clock> clock)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      cache_(std::make_unique<BibCache>(config_.cache_dir)),
      limiter_(config_.requests_per_second, std::move(clock)) {
    if (config_.contact.empty()) {
        if (const char* env = std::getenv("REVBENCH_CONTACT"); env != nullptr)
            config_.contact = env;
    }
}

VerificationResult Verifier::verify(const extraction::CitationRecord& citation) {
    std::string key = citation_key(citation);
    if (auto cached = cache_->get(key, citation)) return *cached;

    if (config_.offline) {
        VerificationResult result;
        result.citation = citation;
        result.status = VerifyStatus::error;  // a miss is not "unverified"
        return result;
    }

    VerificationResult result = query_sources(citation);
    if (result.status != VerifyStatus::error) cache_->put(key, result);
    return result;
}

VerificationResult Verifier::query_sources(const extraction::CitationRecord& citation) {
    VerificationResult result;
    result.citation = citation;

    std::string query = citation.title ? *citation.title
                                       : citation.authors + " " + std::to_string(citation.year);
    HttpHeaders headers;
    std::string agent = "revbench/0.1";
    if (!config_.contact.empty()) agent += " (mailto:" + config_.contact + ")";
    headers.emplace_back("User-Agent", agent);
    if (const char* token = std::getenv("REVBENCH_BIB_TOKEN"); token != nullptr && *token != '\0')
        headers.emplace_back("Authorization", std::string("Bearer ") + token);

    std::size_t failures = 0;
    for (const SourceSpec& spec : sources()) {
        limiter_.acquire(spec.name);
        HttpResponse response;
        try {
            response = transport_->get(query_url(spec.id, query, config_.contact), headers);
        } catch (const TransportError&) {
            ++failures;
            continue;
        }
        if (response.status != 200) {
            ++failures;
            continue;
        }
        std::string reference = citation.title ? *citation.title : citation.authors;
        for (const Candidate& candidate : parse_candidates(spec.id, response.body)) {
            if (candidate.year &&
                std::abs(*candidate.year - citation.year) > config_.year_tolerance)
                continue;
            double similarity = title_similarity(reference, candidate.title);
            if (similarity >= config_.similarity_threshold && candidate.year) {
                result.status = VerifyStatus::verified;
                result.matched_source = spec.id;
                result.matched_title = candidate.title;
                result.similarity = similarity;
                return result;
            }
        }
    }

    result.status =
        failures == sources().size() ? VerifyStatus::error : VerifyStatus::unverified;
    return result;
}

CitationStats citation_stats(std::span<const ReviewCitationCounts> per_review) {
    CitationStats stats;
    if (per_review.empty()) return stats;
    for (const ReviewCitationCounts& counts : per_review) {
        stats.verified_mean += static_cast<double>(counts.verified);
        stats.total_mean += static_cast<double>(counts.total);
    }
    stats.verified_mean /= static_cast<double>(per_review.size());
    stats.total_mean /= static_cast<double>(per_review.size());
    return stats;
}

} // namespace revbench::bib
