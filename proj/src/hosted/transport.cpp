#include "depkit/hosted/transport.hpp"

#include <stdexcept>

#include "httplib.h"

namespace depkit::hosted {

namespace {

class HttplibTransport final : public ProviderTransport {
public:
    explicit HttplibTransport(const ProviderEndpoint& ep)
        : base_url_(ep.base_url), credential_(ep.credential), timeout_(ep.request_timeout) {
        if (base_url_.empty()) throw std::invalid_argument("endpoint base_url is empty");
        while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
    }

    HttpResponse post_json(const std::string& path, const std::string& body) override {
        httplib::Client cli = make_client();
        auto res = cli.Post(path, headers(), body, "application/json");
        return convert(res);
    }

    HttpResponse post_file(const std::string& path, const std::string& field_name,
                           const std::string& filename, const std::string& bytes) override {
        httplib::Client cli = make_client();
        httplib::MultipartFormDataItems items = {
            {field_name, bytes, filename, "application/jsonl"},
            {"purpose", "fine-tune", "", ""},
        };
        auto res = cli.Post(path, headers(), items);
        return convert(res);
    }

    HttpResponse get(const std::string& path) override {
        httplib::Client cli = make_client();
        auto res = cli.Get(path, headers());
        return convert(res);
    }

private:
    httplib::Client make_client() {
        httplib::Client cli(base_url_);
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
        cli.set_connection_timeout(secs.count() > 0 ? secs.count() : 1, 0);
        cli.set_read_timeout(secs.count() > 0 ? secs.count() : 1, 0);
        return cli;
    }

    httplib::Headers headers() const {
        httplib::Headers h;
        if (!credential_.empty()) h.emplace("Authorization", "Bearer " + credential_);
        return h;
    }

    static HttpResponse convert(const httplib::Result& res) {
        if (!res) return {0, "transport error: " + httplib::to_string(res.error())};
        return {res->status, res->body};
    }

    std::string base_url_;
    std::string credential_;
    std::chrono::milliseconds timeout_;
};

}  // namespace

std::unique_ptr<ProviderTransport> make_http_transport(const ProviderEndpoint& endpoint) {
    return std::make_unique<HttplibTransport>(endpoint);
}

}  // namespace depkit::hosted
