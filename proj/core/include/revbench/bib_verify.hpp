#pragma once

#include "revbench/extraction.hpp"
#include "revbench/http_client.hpp"
#include "revbench/rate_limiter.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>

namespace revbench::bib {

enum class MatchSource { crossref, openalex, dblp };
enum class VerifyStatus { verified, unverified, error };

std::string_view to_string(MatchSource source);
std::string_view to_string(VerifyStatus status);

struct VerificationResult {
    extraction::CitationRecord citation;
    VerifyStatus status = VerifyStatus::unverified;
    std::optional<MatchSource> matched_source;
    std::optional<std::string> matched_title;
    double similarity = 0.0;
};

struct VerifierConfig {
    bool offline = true;
    std::filesystem::path cache_dir;
    double similarity_threshold = 0.90;
    int year_tolerance = 1;
    double requests_per_second = 1.0;  // per source
    std::string contact;               // identifies us to the APIs
};

// Case-folds, strips punctuation, collapses whitespace.
std::string normalize_title(std::string_view title);

// 1 - levenshtein / max(length); 1.0 for two empty strings.
double title_similarity(std::string_view a, std::string_view b);

// Stable cache key for a citation: its normalized title (or authors) plus
// the year.
std::string citation_key(const extraction::CitationRecord& citation);

// One JSON file per citation key under the cache directory, named by the
// SHA-256 of the key. Safe for concurrent use.
class BibCache {
public:
    explicit BibCache(std::filesystem::path dir);

    std::optional<VerificationResult> get(const std::string& key,
                                          const extraction::CitationRecord& citation) const;
    void put(const std::string& key, const VerificationResult& result);

private:
    std::filesystem::path dir_;
};

// Checks citations against Crossref, OpenAlex and DBLP in that order,
// stopping at the first match (similarity >= threshold, year within
// tolerance). Results are cached; cache hits never touch the network.
// Offline mode answers from the cache only and reports status=error on a
// miss instead of guessing.
class Verifier {
public:
    Verifier(VerifierConfig config, std::shared_ptr<HttpTransport> transport,
             std::shared_ptr<Clock> clock = system_clock());

    VerificationResult verify(const extraction::CitationRecord& citation);

    const VerifierConfig& config() const { return config_; }

private:
    VerificationResult query_sources(const extraction::CitationRecord& citation);

    VerifierConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    std::unique_ptr<BibCache> cache_;
    RateLimiter limiter_;
};

struct ReviewCitationCounts {
    std::size_t verified = 0;
    std::size_t total = 0;
};

struct CitationStats {
    double verified_mean = 0.0;
    double total_mean = 0.0;
};

// Per-review verified/total counts averaged over the group; zeros for an
// empty group.
CitationStats citation_stats(std::span<const ReviewCitationCounts> per_review);

} // namespace revbench::bib
