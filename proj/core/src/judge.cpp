#include "revbench/judge.hpp"

#include "revbench/errors.hpp"
#include "revbench/http_client.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace revbench::judge {

namespace {

using json = nlohmann::json;

std::string fold(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

const std::set<std::string>& stopwords() {
    static const std::set<std::string> words = {
        "a", "an", "the", "is", "are", "was", "were", "be", "been", "of", "in",
        "on", "to", "for", "and", "or", "but", "with", "this", "that", "it",
        "its", "as", "at", "by", "from", "not", "no",
    };
    return words;
}

std::vector<std::string> fold_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) out.push_back(std::move(current));
        current.clear();
    };
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '\'' || c >= 0x80) {
            current += static_cast<char>(std::tolower(c));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::set<std::string> content_token_set(std::string_view text) {
    std::set<std::string> out;
    for (std::string& tok : fold_tokens(text)) {
        if (!stopwords().count(tok)) out.insert(std::move(tok));
    }
    return out;
}

// Numbered-equation mention: "Eq. (7)", "Eq 7", "Equation 3", "eqs. 1-2".
const std::regex& equation_regex() {
    static const std::regex re(R"([Ee]q(uation)?s?\.?\s*\(?\d)");
    return re;
}

const std::regex& formal_result_regex() {
    static const std::regex re(R"(\b(Theorem|Lemma|Proposition)\b)");
    return re;
}

std::string substitute(std::string text, std::string_view placeholder, std::string_view value) {
    std::size_t pos = text.find(placeholder);
    while (pos != std::string::npos) {
        text.replace(pos, placeholder.size(), value);
        pos = text.find(placeholder, pos + value.size());
    }
    return text;
}

// Strict structured-output parse for atom extraction; accepts a bare JSON
// object or one wrapped in a markdown code fence.
std::optional<AtomicSet> parse_atoms_json(const std::string& content) {
    std::string body = trim(content);
    std::size_t open = body.find('{');
    std::size_t close = body.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
        return std::nullopt;
    json parsed;
    try {
        parsed = json::parse(body.substr(open, close - open + 1));
    } catch (const json::exception&) {
        return std::nullopt;
    }
    if (!parsed.is_object() || !parsed.contains("strengths") || !parsed.contains("weaknesses"))
        return std::nullopt;
    if (!parsed["strengths"].is_array() || !parsed["weaknesses"].is_array())
        return std::nullopt;
    AtomicSet atoms;
    for (const json& item : parsed["strengths"]) {
        if (!item.is_string()) return std::nullopt;
        std::string s = item.get<std::string>();
        if (!is_blank(s)) atoms.strengths.push_back(std::move(s));
    }
    for (const json& item : parsed["weaknesses"]) {
        if (!item.is_string()) return std::nullopt;
        std::string s = item.get<std::string>();
        if (!is_blank(s)) atoms.weaknesses.push_back(std::move(s));
    }
    return atoms;
}

bool starts_with_word(std::string_view s, std::string_view word) {
    if (s.size() < word.size() || s.compare(0, word.size(), word) != 0) return false;
    return s.size() == word.size() ||
           !std::isalpha(static_cast<unsigned char>(s[word.size()]));
}

std::optional<bool> parse_yes_no(const std::string& content) {
    std::string folded = fold(trim(content));
    if (starts_with_word(folded, "yes")) return true;
    if (starts_with_word(folded, "no")) return false;
    // Tolerate a leading "verdict:" style prefix.
    std::size_t colon = folded.find(':');
    if (colon != std::string::npos) {
        std::string after = trim(folded.substr(colon + 1));
        if (starts_with_word(after, "yes")) return true;
        if (starts_with_word(after, "no")) return false;
    }
    return std::nullopt;
}

} // namespace

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("REVBENCH_DATA_DIR"); env != nullptr && *env != '\0')
        return env;
#ifdef REVBENCH_DEFAULT_DATA_DIR
    return REVBENCH_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

MathVerdict classify_math(std::string_view review_text, Judge& judge) {
    if (is_blank(review_text)) throw EmptyInputError("classify_math: empty review text");
    return judge.classify_math(review_text);
}

AtomicSet extract_atoms(std::string_view text, AtomOrigin origin, Judge& judge) {
    if (is_blank(text)) throw EmptyInputError("extract_atoms: empty text");
    return judge.extract_atoms(text, origin);
}

bool coverage_match(std::string_view base, std::string_view target, Judge& judge) {
    if (is_blank(base) || is_blank(target))
        throw EmptyInputError("coverage_match: empty text");
    return judge.coverage_match(base, target);
}

double judge_accuracy(std::span<const std::pair<std::string, bool>> gold, Judge& judge) {
    if (gold.empty()) throw EmptyInputError("judge_accuracy: empty gold set");
    std::size_t correct = 0;
    for (const auto& [text, expected] : gold) {
        if (classify_math(text, judge).engaged == expected) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(gold.size());
}

std::vector<std::pair<std::string, bool>> load_gold_set(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError(file.string(), 0, "cannot open gold set");
    std::vector<std::pair<std::string, bool>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        try {
            json j = json::parse(line);
            out.emplace_back(j.at("text").get<std::string>(), j.at("engaged").get<bool>());
        } catch (const json::exception& e) {
            throw ParseError(file.string(), line_no, e.what());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// StubJudge

MathVerdict StubJudge::classify_math(std::string_view review_text) {
    std::string text(review_text);
    std::smatch m;
    if (std::regex_search(text, m, equation_regex()))
        return {true, "matched numbered-equation mention '" + m.str() + "'"};
    if (std::regex_search(text, m, formal_result_regex()))
        return {true, "matched formal-result token '" + m.str() + "'"};
    return {false, "no numbered equation or formal-result token found"};
}

namespace {

enum class SectionTag { strengths, weaknesses, other };

SectionTag heading_tag(std::string_view line) {
    std::string t = fold(trim(line));
    // Strip markdown decorations around a potential heading.
    while (!t.empty() && (t.front() == '#' || t.front() == '*' || t.front() == '-' ||
                          t.front() == ' '))
        t.erase(t.begin());
    while (!t.empty() && (t.back() == '#' || t.back() == '*' || t.back() == ':' ||
                          t.back() == ' '))
        t.pop_back();
    if (t == "strengths" || t == "strength") return SectionTag::strengths;
    if (t == "weaknesses" || t == "weakness") return SectionTag::weaknesses;
    return SectionTag::other;
}

bool heading_like(std::string_view line) {
    std::string t = trim(line);
    if (t.size() > 64) return false;
    if (t.empty()) return false;
    return t.back() == ':' || t.front() == '#';
}

// Returns the item text when the line opens a list item, dropping the
// bullet or enumerator prefix.
std::optional<std::string> strip_bullet(std::string_view line) {
    std::string t = trim(line);
    if (t.empty()) return std::nullopt;
    auto rest_after = [&](std::size_t n) { return trim(t.substr(n)); };
    if (t.size() >= 2 && (t[0] == '-' || t[0] == '*' || t[0] == '+') && t[1] == ' ')
        return rest_after(2);
    if (t.size() >= 4 && t.compare(0, 3, "\xe2\x80\xa2") == 0)  // bullet glyph
        return rest_after(3);
    // "1." / "12)" / "(3)" / "a)" enumerators.
    std::size_t i = 0;
    if (t[0] == '(') ++i;
    std::size_t digits = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0 && i < t.size() && std::isalpha(static_cast<unsigned char>(t[i])) &&
        t[0] == '(')
        ++i;
    else if (digits == 0 && t.size() >= 2 && std::isalpha(static_cast<unsigned char>(t[0])) &&
             (t[1] == ')' || t[1] == '.') && (t.size() == 2 || t[2] == ' ')) {
        return rest_after(2);
    }
    if (digits > 0 && i < t.size() && (t[i] == '.' || t[i] == ')')) {
        ++i;
        if (t[0] == '(' && i < t.size() && t[i] == ')') ++i;
        if (i >= t.size() || t[i] == ' ') return rest_after(i);
    }
    if (t[0] == '(' && i < t.size() && t[i] == ')')
        return rest_after(i + 1);
    return std::nullopt;
}

} // namespace

AtomicSet StubJudge::extract_atoms(std::string_view text, AtomOrigin) {
    AtomicSet atoms;
    std::vector<std::string>* current = nullptr;
    std::string pending;

    auto flush = [&] {
        if (current != nullptr && !is_blank(pending)) current->push_back(trim(pending));
        pending.clear();
    };

    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        SectionTag tag = heading_tag(line);
        if (tag == SectionTag::strengths) {
            flush();
            current = &atoms.strengths;
            continue;
        }
        if (tag == SectionTag::weaknesses) {
            flush();
            current = &atoms.weaknesses;
            continue;
        }
        if (heading_like(line) && tag == SectionTag::other) {
            flush();
            current = nullptr;  // left the strengths/weaknesses region
            continue;
        }
        if (current == nullptr) continue;
        if (auto item = strip_bullet(line)) {
            flush();
            pending = *item;
        } else if (is_blank(line)) {
            flush();
        } else if (!pending.empty()) {
            pending += ' ';
            pending += trim(line);
        } else {
            pending = trim(line);  // free prose line forms its own item
        }
    }
    flush();
    return atoms;
}

bool StubJudge::coverage_match(std::string_view base, std::string_view target) {
    std::set<std::string> a = content_token_set(base);
    std::set<std::string> b = content_token_set(target);
    if (a.empty() && b.empty()) {
        // No content tokens on either side: fall back to full token lists,
        // then raw equality.
        auto ta = fold_tokens(base);
        auto tb = fold_tokens(target);
        if (ta.empty() && tb.empty()) return trim(base) == trim(target);
        a.insert(ta.begin(), ta.end());
        b.insert(tb.begin(), tb.end());
    }
    std::size_t inter = 0;
    for (const std::string& tok : a) inter += b.count(tok);
    std::size_t uni = a.size() + b.size() - inter;
    if (uni == 0) return true;
    return static_cast<double>(inter) / static_cast<double>(uni) >= 0.5;
}

// ---------------------------------------------------------------------------
// LlmJudge

LlmJudge::LlmJudge(JudgeConfig config, std::shared_ptr<ChatTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
    if (config_.prompts_dir.empty()) config_.prompts_dir = default_data_dir() / "prompts";
}

std::string LlmJudge::prompt_file(const std::string& name) const {
    std::filesystem::path path = config_.prompts_dir / name;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("missing prompt file: " + path.string());
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

std::string LlmJudge::request(const std::vector<std::pair<std::string, std::string>>& messages,
                              double temperature) {
    int attempts = 0;
    for (;;) {
        ++attempts;
        try {
            ++calls_;
            return transport_->complete(config_, messages, temperature);
        } catch (const TransportError&) {
            if (attempts >= config_.retry.max_attempts) throw;
            std::this_thread::sleep_for(config_.retry.backoff * attempts);
        }
    }
}

MathVerdict LlmJudge::classify_math(std::string_view review_text) {
    std::string criterion = prompt_file("math_engagement_criterion.txt");
    std::vector<std::pair<std::string, std::string>> messages = {
        {"system", criterion},
        {"user", "Review text:\n" + std::string(review_text) +
                     "\n\nDoes the review engage with the mathematical content of the paper "
                     "according to the criterion? Reply with 'verdict: yes' or 'verdict: no' "
                     "on the first line, then a brief rationale."},
    };
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::string content = request(messages, config_.temperature);
        if (auto verdict = parse_yes_no(content)) {
            std::string trace = trim(content);
            if (trace.empty()) trace = *verdict ? "yes" : "no";
            return {*verdict, trace};
        }
    }
    throw VerdictParseError("classify_math: unparsable verdict from judge");
}

AtomicSet LlmJudge::extract_atoms(std::string_view text, AtomOrigin origin) {
    std::string prompt = prompt_file(origin == AtomOrigin::human
                                         ? "atomic_extract_human.txt"
                                         : "atomic_extract_generated.txt");
    prompt = substitute(std::move(prompt), "{context}", text);
    std::vector<std::pair<std::string, std::string>> messages = {{"user", prompt}};
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::string content = request(messages, config_.temperature);
        if (auto atoms = parse_atoms_json(content)) return *atoms;
    }
    throw VerdictParseError("extract_atoms: malformed structured output from judge");
}

bool LlmJudge::coverage_match(std::string_view base, std::string_view target) {
    std::string prompt = prompt_file("coverage_match.txt");
    prompt = substitute(std::move(prompt), "{base_text}", base);
    prompt = substitute(std::move(prompt), "{task_text}", target);
    std::vector<std::pair<std::string, std::string>> messages = {{"user", prompt}};
    // Temperature is pinned to zero for coverage decisions regardless of the
    // configured default.
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::string content = request(messages, 0.0);
        if (auto verdict = parse_yes_no(content)) return *verdict;
    }
    throw VerdictParseError("coverage_match: unparsable verdict from judge");
}

namespace {

class HttpChatTransport : public ChatTransport {
public:
    HttpChatTransport() : transport_(make_live_transport()) {}

    std::string complete(const JudgeConfig& config,
                         const std::vector<std::pair<std::string, std::string>>& messages,
                         double temperature) override {
        json body;
        body["model"] = config.model;
        body["temperature"] = temperature;
        body["messages"] = json::array();
        for (const auto& [role, content] : messages) {
            body["messages"].push_back({{"role", role}, {"content", content}});
        }
        std::vector<std::pair<std::string, std::string>> headers = {
            {"Content-Type", "application/json"}};
        if (const char* token = std::getenv("REVBENCH_JUDGE_TOKEN");
            token != nullptr && *token != '\0') {
            headers.emplace_back("Authorization", std::string("Bearer ") + token);
        }
        HttpResponse response = transport_->post(config.endpoint, body.dump(), headers);
        if (response.status != 200)
            throw TransportError("judge endpoint returned HTTP " +
                                 std::to_string(response.status));
        try {
            json parsed = json::parse(response.body);
            return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception& e) {
            throw TransportError(std::string("judge response malformed: ") + e.what());
        }
    }

private:
    std::shared_ptr<HttpTransport> transport_;
};

} // namespace

std::shared_ptr<ChatTransport> make_http_chat_transport() {
    return std::make_shared<HttpChatTransport>();
}

} // namespace revbench::judge
