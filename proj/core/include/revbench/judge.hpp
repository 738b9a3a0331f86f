#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revbench::judge {

// Directory holding the shipped prompt files and gold set: REVBENCH_DATA_DIR
// when set, else the build-time default.
std::filesystem::path default_data_dir();

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds backoff{500};
};

struct JudgeConfig {
    std::string endpoint;  // chat-completion URL
    std::string model;
    double temperature = 0.0;
    unsigned max_parallel = 4;
    RetryPolicy retry;
    std::filesystem::path prompts_dir;  // defaults to default_data_dir()/"prompts"
};

struct MathVerdict {
    bool engaged = false;
    std::string trace;
};

struct AtomicSet {
    std::vector<std::string> strengths;
    std::vector<std::string> weaknesses;
};

enum class AtomOrigin { human, generated };

// One judging backend implementing the three classifier roles. Instances
// are safe to share across worker threads.
class Judge {
public:
    virtual ~Judge() = default;
    virtual MathVerdict classify_math(std::string_view review_text) = 0;
    virtual AtomicSet extract_atoms(std::string_view text, AtomOrigin origin) = 0;
    virtual bool coverage_match(std::string_view base, std::string_view target) = 0;
    virtual unsigned max_parallel() const { return 1; }
};

// Precondition-checked entry points used by the pipeline.
MathVerdict classify_math(std::string_view review_text, Judge& judge);
AtomicSet extract_atoms(std::string_view text, AtomOrigin origin, Judge& judge);
bool coverage_match(std::string_view base, std::string_view target, Judge& judge);

// Fraction of gold verdicts the judge reproduces.
double judge_accuracy(std::span<const std::pair<std::string, bool>> gold, Judge& judge);

// Gold file: one JSON object per line with "text" and "engaged" fields.
std::vector<std::pair<std::string, bool>> load_gold_set(const std::filesystem::path& file);

// Deterministic rule-based judge for tests and offline runs:
//  - math: a numbered-equation mention or a Theorem/Lemma/Proposition token;
//  - atoms: markdown heading + bullet/numbered-list splitting;
//  - coverage: Jaccard overlap of content tokens >= 0.5.
class StubJudge : public Judge {
public:
    MathVerdict classify_math(std::string_view review_text) override;
    AtomicSet extract_atoms(std::string_view text, AtomOrigin origin) override;
    bool coverage_match(std::string_view base, std::string_view target) override;
};

// Transport seam for the live judge; scripted in tests.
class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    // Sends (role, content) messages, returns the assistant message content.
    virtual std::string complete(const JudgeConfig& config,
                                 const std::vector<std::pair<std::string, std::string>>& messages,
                                 double temperature) = 0;
};

// OpenAI-style chat-completion call over HTTPS; bearer token from
// REVBENCH_JUDGE_TOKEN when present.
std::shared_ptr<ChatTransport> make_http_chat_transport();

// Judge backed by a chat-completion endpoint. Prompt texts come from the
// shipped data files. Transport failures are retried with backoff; a
// response that fails strict parsing is re-requested once, then rejected
// with VerdictParseError. Each parsed verdict is accounted exactly once.
class LlmJudge : public Judge {
public:
    LlmJudge(JudgeConfig config, std::shared_ptr<ChatTransport> transport);

    MathVerdict classify_math(std::string_view review_text) override;
    AtomicSet extract_atoms(std::string_view text, AtomOrigin origin) override;
    bool coverage_match(std::string_view base, std::string_view target) override;
    unsigned max_parallel() const override { return config_.max_parallel; }

    std::size_t transport_calls() const { return calls_.load(); }

private:
    std::string request(const std::vector<std::pair<std::string, std::string>>& messages,
                        double temperature);
    std::string prompt_file(const std::string& name) const;

    JudgeConfig config_;
    std::shared_ptr<ChatTransport> transport_;
    std::atomic<std::size_t> calls_{0};
};

} // namespace revbench::judge
