#include "revbench/metrics.hpp"

#include "revbench/errors.hpp"
#include "revbench/extraction.hpp"
#include "revbench/parallel.hpp"
#include "revbench/text_stats.hpp"

#include <algorithm>
#include <map>

namespace revbench::metrics {

namespace {

void accumulate(FieldStat& stat, std::vector<double>& scratch) {
    stat.n = scratch.size();
    if (scratch.empty()) return;
    stat.mean = stats::mean(scratch);
    if (scratch.size() >= 2) stat.std_dev = stats::sample_std(scratch);
    scratch.clear();
}

struct GroupScratch {
    std::vector<double> tkc, ttr, fre, fkg, xref, citations_total, citations_verified, rating,
        confidence, math;
    std::size_t n = 0;
};

bool group_before(const corpus::Source& a, corpus::PromptKind pa, const corpus::Source& b,
                  corpus::PromptKind pb) {
    if (a.human != b.human) return a.human;  // human rows first
    if (a.model != b.model) return a.model < b.model;
    return static_cast<int>(pa) < static_cast<int>(pb);
}

} // namespace

MetricsRow compute_row(const corpus::ReviewRecord& review, const corpus::PaperRecord& paper,
                       judge::Judge* judge, bib::Verifier* verifier) {
    MetricsRow row;
    row.review_id = review.review_id;
    row.source = review.source;
    row.prompt_kind = review.prompt_kind;
    row.venue = paper.venue;
    row.year = paper.year;
    row.numeric_rating = review.numeric_rating;
    row.numeric_confidence = review.numeric_confidence;

    const std::string& text = review.full_text;

    textstats::TokenizedText tt = textstats::tokenize(text);
    row.tkc = tt.word_count();
    if (row.tkc > 0 && tt.sentences > 0) {
        row.ttr = textstats::type_token_ratio(tt);
        row.fre = textstats::fre(tt);
        row.fkg = textstats::fkg(tt);
    }

    row.xref_count = extraction::extract_xrefs(text).size();

    std::vector<extraction::CitationRecord> citations = extraction::extract_citations(text);
    row.citations_total = citations.size();
    if (verifier != nullptr) {
        std::size_t verified = 0;
        for (const extraction::CitationRecord& citation : citations) {
            bib::VerificationResult result = verifier->verify(citation);
            if (result.status == bib::VerifyStatus::error)
                throw TransportError("review " + review.review_id +
                                     ": citation verification failed for '" + citation.raw + "'");
            if (result.status == bib::VerifyStatus::verified) ++verified;
        }
        row.citations_verified = verified;
    }

    if (judge != nullptr && row.tkc > 0) {
        try {
            row.math_engaged = judge::classify_math(text, *judge).engaged;
        } catch (const Error& e) {
            throw TransportError("review " + review.review_id + ": " + e.what());
        }
    }
    return row;
}

std::vector<MetricsRow> compute_rows(const corpus::Corpus& corpus, judge::Judge* judge,
                                     bib::Verifier* verifier, unsigned jobs) {
    std::vector<MetricsRow> rows(corpus.reviews.size());
    parallel_for(corpus.reviews.size(), jobs, [&](std::size_t i) {
        const corpus::ReviewRecord& review = corpus.reviews[i];
        const corpus::PaperRecord* paper = corpus.find_paper(review.paper_id);
        if (paper == nullptr)
            throw ReferentialError("review " + review.review_id + " has no paper");
        rows[i] = compute_row(review, *paper, judge, verifier);
    });
    std::sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
        if (a.source != b.source || a.prompt_kind != b.prompt_kind)
            return group_before(a.source, a.prompt_kind, b.source, b.prompt_kind);
        if (a.venue != b.venue) return static_cast<int>(a.venue) < static_cast<int>(b.venue);
        if (a.year != b.year) return a.year < b.year;
        return a.review_id < b.review_id;
    });
    return rows;
}

std::vector<GroupAggregate> aggregate_table(std::span<const MetricsRow> rows) {
    std::map<std::pair<std::string, int>, GroupScratch> groups;
    std::map<std::pair<std::string, int>, corpus::Source> sources;
    for (const MetricsRow& row : rows) {
        // Key sorts human before models, then by model name and prompt.
        std::string source_key = row.source.human ? "" : "m:" + row.source.model;
        auto key = std::make_pair(source_key, static_cast<int>(row.prompt_kind));
        GroupScratch& g = groups[key];
        sources.emplace(key, row.source);
        ++g.n;
        g.tkc.push_back(static_cast<double>(row.tkc));
        if (row.ttr) g.ttr.push_back(*row.ttr);
        if (row.fre) g.fre.push_back(*row.fre);
        if (row.fkg) g.fkg.push_back(*row.fkg);
        g.xref.push_back(static_cast<double>(row.xref_count));
        g.citations_total.push_back(static_cast<double>(row.citations_total));
        if (row.citations_verified)
            g.citations_verified.push_back(static_cast<double>(*row.citations_verified));
        if (row.numeric_rating) g.rating.push_back(static_cast<double>(*row.numeric_rating));
        if (row.numeric_confidence)
            g.confidence.push_back(static_cast<double>(*row.numeric_confidence));
        if (row.math_engaged) g.math.push_back(*row.math_engaged ? 1.0 : 0.0);
    }

    std::vector<GroupAggregate> out;
    for (auto& [key, scratch] : groups) {
        GroupAggregate agg;
        agg.source = sources.at(key);
        agg.prompt_kind = static_cast<corpus::PromptKind>(key.second);
        agg.n = scratch.n;
        accumulate(agg.tkc, scratch.tkc);
        accumulate(agg.ttr, scratch.ttr);
        accumulate(agg.fre, scratch.fre);
        accumulate(agg.fkg, scratch.fkg);
        accumulate(agg.xref, scratch.xref);
        accumulate(agg.citations_total, scratch.citations_total);
        accumulate(agg.citations_verified, scratch.citations_verified);
        accumulate(agg.rating, scratch.rating);
        accumulate(agg.confidence, scratch.confidence);
        accumulate(agg.math, scratch.math);
        out.push_back(std::move(agg));
    }
    return out;
}

AblationDeltas prompt_ablation(std::span<const MetricsRow> rows, const std::string& model) {
    std::vector<MetricsRow> extended, guidelines;
    for (const MetricsRow& row : rows) {
        if (row.source.human || row.source.model != model) continue;
        if (row.prompt_kind == corpus::PromptKind::extended) extended.push_back(row);
        if (row.prompt_kind == corpus::PromptKind::guidelines) guidelines.push_back(row);
    }
    if (extended.empty() || guidelines.empty())
        throw ConfigError("prompt_ablation: model " + model +
                          " needs both extended and guidelines rows");
    auto group_mean = [](std::span<const MetricsRow> subset) {
        std::vector<GroupAggregate> agg = aggregate_table(subset);
        return agg.at(0);
    };
    GroupAggregate e = group_mean(extended);
    GroupAggregate g = group_mean(guidelines);
    auto delta = [](const FieldStat& a, const FieldStat& b) -> std::optional<double> {
        if (!a.mean || !b.mean) return std::nullopt;
        return *a.mean - *b.mean;
    };
    AblationDeltas deltas;
    deltas.tkc = delta(e.tkc, g.tkc);
    deltas.ttr = delta(e.ttr, g.ttr);
    deltas.fre = delta(e.fre, g.fre);
    deltas.fkg = delta(e.fkg, g.fkg);
    deltas.xref = delta(e.xref, g.xref);
    deltas.math = delta(e.math, g.math);
    return deltas;
}

HumanRatios ratios_to_human(const GroupAggregate& model_group,
                            const GroupAggregate& human_group) {
    auto ratio = [](const FieldStat& m, const FieldStat& h) -> std::optional<double> {
        if (!m.mean || !h.mean || *h.mean == 0.0) return std::nullopt;
        return *m.mean / *h.mean;
    };
    HumanRatios out;
    out.tkc = ratio(model_group.tkc, human_group.tkc);
    out.ttr = ratio(model_group.ttr, human_group.ttr);
    out.fre = ratio(model_group.fre, human_group.fre);
    out.fkg = ratio(model_group.fkg, human_group.fkg);
    out.xref = ratio(model_group.xref, human_group.xref);
    out.math = ratio(model_group.math, human_group.math);
    return out;
}

stats::EraComparison era_compare_metric(std::span<const MetricsRow> rows, corpus::Venue venue,
                                        const MetricSelector& selector) {
    std::vector<double> pre, post;
    for (const MetricsRow& row : rows) {
        if (row.venue != venue) continue;
        std::optional<double> value = selector(row);
        if (!value) continue;
        if (corpus::era_of(row.venue, row.year) == corpus::Era::pre_llm) pre.push_back(*value);
        else post.push_back(*value);
    }
    return stats::era_compare(pre, post);
}

} // namespace revbench::metrics
