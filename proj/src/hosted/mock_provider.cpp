#include "depkit/hosted/mock_provider.hpp"

#include <cstdio>
#include <stdexcept>
#include <thread>

#include "httplib.h"

#include "depkit/util/jsonl.hpp"

namespace depkit::hosted {

namespace {

using nlohmann::json;

HttpResponse error_response(int status, const std::string& message) {
    return {status, json{{"error", {{"message", message}}}}.dump()};
}

std::string zero_padded(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d", n);
    return buf;
}

}  // namespace

void MockScript::validate() const {
    if (job_statuses.empty()) throw std::invalid_argument("mock script has no job statuses");
    if (job_statuses.front() != "queued") {
        throw std::invalid_argument("mock job scripts must start in 'queued'");
    }
    JobStatus prev = job_status_from_string(job_statuses.front());
    for (size_t i = 1; i < job_statuses.size(); ++i) {
        JobStatus next = job_status_from_string(job_statuses[i]);
        if (!job_transition_valid(prev, next)) {
            throw std::invalid_argument("mock script transition " + to_string(prev) + " -> " +
                                        to_string(next) + " is not legal");
        }
        prev = next;
    }
}

MockScript MockScript::from_file(const std::string& path) {
    json j = json::parse(util::read_file(path));
    MockScript script;
    if (j.contains("job_statuses")) {
        script.job_statuses = j["job_statuses"].get<std::vector<std::string>>();
    }
    if (j.contains("completions")) {
        script.completions = j["completions"].get<std::vector<std::string>>();
    }
    script.validate();
    return script;
}

MockProvider::MockProvider(MockScript script) : script_(std::move(script)) {
    script_.validate();
}

HttpResponse MockProvider::guard() {
    ++requests_;
    if (fail_remaining_ > 0) {
        --fail_remaining_;
        if (fail_status_ <= 0) return {0, "transport error: injected"};
        return error_response(fail_status_, "injected failure");
    }
    return {200, ""};
}

HttpResponse MockProvider::post_file(const std::string& path, const std::string&,
                                     const std::string& filename, const std::string& bytes) {
    std::lock_guard<std::mutex> lock(mu_);
    auto guarded = guard();
    if (guarded.status != 200 || !guarded.body.empty()) return guarded;
    if (path != "/v1/files") return error_response(404, "no such route: " + path);
    return handle_upload(filename, bytes);
}

HttpResponse MockProvider::post_json(const std::string& path, const std::string& body) {
    std::lock_guard<std::mutex> lock(mu_);
    auto guarded = guard();
    if (guarded.status != 200 || !guarded.body.empty()) return guarded;
    if (path == "/v1/fine_tuning/jobs") return handle_create_job(body);
    if (path == "/v1/chat/completions") return handle_completion(body);
    return error_response(404, "no such route: " + path);
}

HttpResponse MockProvider::get(const std::string& path) {
    std::lock_guard<std::mutex> lock(mu_);
    auto guarded = guard();
    if (guarded.status != 200 || !guarded.body.empty()) return guarded;
    const std::string prefix = "/v1/fine_tuning/jobs/";
    if (path.rfind(prefix, 0) == 0) return handle_get_job(path.substr(prefix.size()));
    return error_response(404, "no such route: " + path);
}

HttpResponse MockProvider::handle_upload(const std::string& filename, const std::string& bytes) {
    if (bytes.empty()) return error_response(400, "uploaded file is empty");
    std::string id = "file-" + zero_padded(next_file_++);
    file_ids_.push_back(id);
    return {200, json{{"id", id},
                      {"object", "file"},
                      {"bytes", bytes.size()},
                      {"filename", filename},
                      {"purpose", "fine-tune"}}
                     .dump()};
}

HttpResponse MockProvider::handle_create_job(const std::string& body) {
    json req = json::parse(body, nullptr, false);
    if (req.is_discarded()) return error_response(400, "request body is not JSON");
    if (!req.contains("training_file") || !req["training_file"].is_string() ||
        !req.contains("model") || !req["model"].is_string()) {
        return error_response(400, "missing training_file or model");
    }
    const std::string file_id = req["training_file"].get<std::string>();
    bool known = false;
    for (const auto& id : file_ids_) known = known || id == file_id;
    if (!known) return error_response(404, "training file not found: " + file_id);

    JobState state;
    std::string job_id = "ftjob-" + zero_padded(next_job_++);
    state.resource = {{"id", job_id},
                      {"object", "fine_tuning.job"},
                      {"status", script_.job_statuses.front()},
                      {"training_file", file_id},
                      {"model", req["model"]},
                      // hyperparameters echoed verbatim from the request
                      {"hyperparameters", req.value("hyperparameters", json::object())},
                      {"created_at", 1700000000 + next_job_},
                      {"fine_tuned_model", nullptr},
                      {"finished_at", nullptr}};
    state.terminal = is_terminal(job_status_from_string(script_.job_statuses.front()));
    jobs_.emplace(job_id, state);
    return {200, state.resource.dump()};
}

HttpResponse MockProvider::handle_get_job(const std::string& job_id) {
    auto it = jobs_.find(job_id);
    if (it == jobs_.end()) return error_response(404, "job not found: " + job_id);
    JobState& state = it->second;

    std::string status = script_.job_statuses[state.cursor];
    state.resource["status"] = status;
    JobStatus parsed = job_status_from_string(status);
    if (is_terminal(parsed) && !state.terminal) {
        state.terminal = true;
        state.resource["finished_at"] = state.resource["created_at"].get<std::int64_t>() + 60;
        if (parsed == JobStatus::SUCCEEDED) {
            state.resource["fine_tuned_model"] =
                "ft:" + state.resource["model"].get<std::string>() + ":mock-" + job_id;
        } else {
            state.resource["error"] = {{"message", "scripted " + status}};
        }
    }
    if (!state.terminal && state.cursor + 1 < script_.job_statuses.size()) {
        ++state.cursor;
    }
    return {200, state.resource.dump()};
}

HttpResponse MockProvider::handle_completion(const std::string& body) {
    json req = json::parse(body, nullptr, false);
    if (req.is_discarded() || !req.contains("messages")) {
        return error_response(400, "request needs messages");
    }
    std::string reply = "depressive";
    if (!script_.completions.empty()) {
        size_t i = std::min(completion_cursor_, script_.completions.size() - 1);
        reply = script_.completions[i];
        ++completion_cursor_;
    }
    return {200, json{{"id", "cmpl-" + std::to_string(requests_)},
                      {"object", "chat.completion"},
                      {"choices",
                       json::array({json{{"index", 0},
                                         {"message",
                                          {{"role", "assistant"}, {"content", reply}}}}})}}
                     .dump()};
}

void MockProvider::fail_next_requests(int n, int status) {
    std::lock_guard<std::mutex> lock(mu_);
    fail_remaining_ = n;
    fail_status_ = status;
}

int MockProvider::request_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    return requests_;
}

std::vector<std::string> MockProvider::uploaded_file_ids() const {
    std::lock_guard<std::mutex> lock(mu_);
    return file_ids_;
}

struct MockServer::Impl {
    std::shared_ptr<MockProvider> provider;
    httplib::Server server;
    std::thread worker;
    int port = 0;

    void route() {
        server.Post("/v1/files", [this](const httplib::Request& req, httplib::Response& res) {
            std::string filename = "upload.jsonl";
            std::string bytes = req.body;
            if (req.has_file("file")) {
                const auto& f = req.get_file_value("file");
                filename = f.filename;
                bytes = f.content;
            }
            reply(res, provider->post_file("/v1/files", "file", filename, bytes));
        });
        server.Post("/v1/fine_tuning/jobs",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        reply(res, provider->post_json("/v1/fine_tuning/jobs", req.body));
                    });
        server.Post("/v1/chat/completions",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        reply(res, provider->post_json("/v1/chat/completions", req.body));
                    });
        server.Get(R"(/v1/fine_tuning/jobs/(.+))",
                   [this](const httplib::Request& req, httplib::Response& res) {
                       reply(res, provider->get("/v1/fine_tuning/jobs/" + req.matches[1].str()));
                   });
        server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("ok", "text/plain");
        });
    }

    static void reply(httplib::Response& res, const HttpResponse& from) {
        // a transport-level injected failure becomes a closed connection
        if (from.status <= 0) {
            res.status = 500;
            res.set_content("", "text/plain");
            return;
        }
        res.status = from.status;
        res.set_content(from.body, "application/json");
    }
};

MockServer::MockServer(std::shared_ptr<MockProvider> provider, int port) : impl_(new Impl) {
    impl_->provider = std::move(provider);
    impl_->route();
    if (port > 0) {
        if (!impl_->server.bind_to_port("127.0.0.1", port)) {
            throw std::runtime_error("mock server could not bind port " + std::to_string(port));
        }
        impl_->port = port;
    } else {
        impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
    }
    if (impl_->port <= 0) throw std::runtime_error("mock server could not bind a port");
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

MockServer::~MockServer() { stop(); }

int MockServer::port() const { return impl_->port; }

std::string MockServer::base_url() const {
    return "http://127.0.0.1:" + std::to_string(impl_->port);
}

void MockServer::stop() {
    if (impl_ && impl_->server.is_running()) {
        impl_->server.stop();
    }
    if (impl_ && impl_->worker.joinable()) impl_->worker.join();
}

void MockServer::wait() {
    if (impl_ && impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace depkit::hosted
