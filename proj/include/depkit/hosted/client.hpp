#pragma once

#include <memory>
#include <string>
#include <vector>

#include "depkit/hosted/transport.hpp"
#include "depkit/hosted/types.hpp"
#include "depkit/infer/prompt.hpp"

namespace depkit::hosted {

// Raised when the provider rejects a request (4xx) or a response cannot be
// interpreted; the provider's message is preserved.
class ProviderError : public std::runtime_error {
public:
    ProviderError(std::string msg, int status)
        : std::runtime_error(std::move(msg)), status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

// Raised after retries are exhausted on transport errors / 5xx responses.
class TransportError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PollResult {
    FineTuneJob job;
    bool timed_out = false;  // deadline hit before a terminal status
};

// Immutable after construction; safe to share between threads.
class HostedClient {
public:
    HostedClient(ProviderEndpoint endpoint, std::shared_ptr<ProviderTransport> transport);

    // Validates the chat-format file locally (line-numbered errors, no
    // network traffic on failure), then uploads it.
    std::string upload_training_file(const std::string& path) const;

    FineTuneJob create_job(const std::string& file_id, const HostedHyperparams& hp,
                           const std::string& base_model) const;

    FineTuneJob retrieve_job(const std::string& job_id) const;

    // Returns the first terminal snapshot, or the latest snapshot with
    // timed_out set once `deadline` elapses.
    PollResult poll_job(const std::string& job_id, std::chrono::milliseconds interval,
                        std::chrono::milliseconds deadline) const;

    // Chat completion against a (fine-tuned) model; returns the assistant text.
    std::string complete(const std::string& model_id,
                         const std::vector<infer::ChatMessage>& messages) const;

    const ProviderEndpoint& endpoint() const { return endpoint_; }

private:
    HttpResponse with_retries(const std::function<HttpResponse()>& attempt) const;

    ProviderEndpoint endpoint_;
    std::shared_ptr<ProviderTransport> transport_;
};

}  // namespace depkit::hosted
