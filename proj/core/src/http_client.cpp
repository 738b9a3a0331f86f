#include "revbench/http_client.hpp"

#include "revbench/errors.hpp"

#include "httplib.h"

#include <cctype>

namespace revbench {

namespace {

struct ParsedUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // path + query, at least "/"
};

ParsedUrl split_url(const std::string& url) {
    std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw TransportError("malformed url: " + url);
    std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

httplib::Headers to_httplib(const HttpHeaders& headers) {
    httplib::Headers out;
    for (const auto& [key, value] : headers) out.emplace(key, value);
    return out;
}

class LiveTransport : public HttpTransport {
public:
    HttpResponse get(const std::string& url, const HttpHeaders& headers) override {
        ParsedUrl parsed = split_url(url);
        httplib::Client client(parsed.origin);
        client.set_follow_location(true);
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        auto result = client.Get(parsed.path, to_httplib(headers));
        if (!result) throw TransportError("GET " + url + " failed: " + to_string(result.error()));
        return {result->status, result->body};
    }

    HttpResponse post(const std::string& url, const std::string& body,
                      const HttpHeaders& headers) override {
        ParsedUrl parsed = split_url(url);
        httplib::Client client(parsed.origin);
        client.set_follow_location(true);
        client.set_connection_timeout(10);
        client.set_read_timeout(120);
        auto result = client.Post(parsed.path, to_httplib(headers), body, "application/json");
        if (!result) throw TransportError("POST " + url + " failed: " + to_string(result.error()));
        return {result->status, result->body};
    }
};

} // namespace

std::shared_ptr<HttpTransport> make_live_transport() {
    return std::make_shared<LiveTransport>();
}

std::string url_encode(std::string_view value) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(value.size());
    for (unsigned char c : value) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else if (c == ' ') {
            out += "%20";
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xf];
        }
    }
    return out;
}

} // namespace revbench
