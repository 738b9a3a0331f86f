#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace revbench {

struct HttpResponse {
    int status = 0;
    std::string body;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

// Transport seam for everything that talks to the network. Tests inject
// scripted or failing transports; production uses make_live_transport().
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& url, const HttpHeaders& headers) = 0;
    virtual HttpResponse post(const std::string& url, const std::string& body,
                              const HttpHeaders& headers) = 0;
};

std::shared_ptr<HttpTransport> make_live_transport();

// Percent-encodes a query-string value.
std::string url_encode(std::string_view value);

} // namespace revbench
