#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "depkit/hosted/transport.hpp"

namespace depkit::hosted {

// Per-job status walk plus canned completion replies. Sequences must respect
// the job state machine.
struct MockScript {
    std::vector<std::string> job_statuses = {"queued", "running", "succeeded"};
    std::vector<std::string> completions;

    void validate() const;
    static MockScript from_file(const std::string& path);
};

// In-process provider double implementing the wire protocol (files,
// fine-tuning jobs, chat completions). All state mutations are serialized
// behind one mutex. Also usable behind MockServer for the standalone mode.
class MockProvider final : public ProviderTransport {
public:
    explicit MockProvider(MockScript script = {});

    HttpResponse post_json(const std::string& path, const std::string& body) override;
    HttpResponse post_file(const std::string& path, const std::string& field_name,
                           const std::string& filename, const std::string& bytes) override;
    HttpResponse get(const std::string& path) override;

    // Next `n` requests answer with `status`; status <= 0 simulates a
    // transport-level failure.
    void fail_next_requests(int n, int status);

    int request_count() const;
    std::vector<std::string> uploaded_file_ids() const;

private:
    HttpResponse guard();
    HttpResponse handle_upload(const std::string& filename, const std::string& bytes);
    HttpResponse handle_create_job(const std::string& body);
    HttpResponse handle_get_job(const std::string& job_id);
    HttpResponse handle_completion(const std::string& body);

    struct JobState {
        nlohmann::json resource;
        size_t cursor = 0;
        bool terminal = false;
    };

    mutable std::mutex mu_;
    MockScript script_;
    int requests_ = 0;
    int fail_remaining_ = 0;
    int fail_status_ = 500;
    std::vector<std::string> file_ids_;
    std::map<std::string, JobState> jobs_;
    size_t completion_cursor_ = 0;
    int next_file_ = 1;
    int next_job_ = 1;
};

// Standalone mode: the same MockProvider served over HTTP on 127.0.0.1.
class MockServer {
public:
    // port 0 picks a free one
    explicit MockServer(std::shared_ptr<MockProvider> provider, int port = 0);
    ~MockServer();

    MockServer(const MockServer&) = delete;
    MockServer& operator=(const MockServer&) = delete;

    int port() const;
    std::string base_url() const;
    void stop();

    // Blocks until the server is stopped (standalone mode).
    void wait();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace depkit::hosted
