#pragma once

#include <memory>
#include <string>

#include "depkit/hosted/types.hpp"

namespace depkit::hosted {

struct HttpResponse {
    int status = 0;  // <= 0 means transport failure (message in body)
    std::string body;

    bool transport_failed() const { return status <= 0; }
    bool server_error() const { return status >= 500; }
};

class ProviderTransport {
public:
    virtual ~ProviderTransport() = default;
    virtual HttpResponse post_json(const std::string& path, const std::string& body) = 0;
    virtual HttpResponse post_file(const std::string& path, const std::string& field_name,
                                   const std::string& filename, const std::string& bytes) = 0;
    virtual HttpResponse get(const std::string& path) = 0;
};

// HTTP transport over the endpoint's base URL; attaches the bearer credential.
std::unique_ptr<ProviderTransport> make_http_transport(const ProviderEndpoint& endpoint);

}  // namespace depkit::hosted
