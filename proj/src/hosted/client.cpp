#include "depkit/hosted/client.hpp"

#include <filesystem>
#include <thread>

#include "depkit/corpus/chat_format.hpp"
#include "depkit/util/hash.hpp"
#include "depkit/util/jsonl.hpp"

namespace depkit::hosted {

namespace {

using nlohmann::json;

json parse_body(const HttpResponse& res) {
    json j = json::parse(res.body, nullptr, false);
    if (j.is_discarded()) {
        throw ProviderError("provider returned unparseable response (status " +
                                std::to_string(res.status) + ")",
                            res.status);
    }
    return j;
}

FineTuneJob job_from_body(const HttpResponse& res) {
    try {
        FineTuneJob job = job_from_json(parse_body(res));
        job.check_invariants();
        return job;
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("malformed job resource: ") + e.what(), res.status);
    }
}

[[noreturn]] void raise_provider_error(const HttpResponse& res) {
    std::string message = "provider error (status " + std::to_string(res.status) + ")";
    json j = json::parse(res.body, nullptr, false);
    if (!j.is_discarded() && j.contains("error") && j["error"].contains("message")) {
        message += ": " + j["error"]["message"].get<std::string>();
    }
    throw ProviderError(message, res.status);
}

}  // namespace

HostedClient::HostedClient(ProviderEndpoint endpoint, std::shared_ptr<ProviderTransport> transport)
    : endpoint_(std::move(endpoint)), transport_(std::move(transport)) {
    if (!transport_) throw std::invalid_argument("transport must not be null");
}

HttpResponse HostedClient::with_retries(const std::function<HttpResponse()>& attempt) const {
    HttpResponse res;
    for (int n = 0; n <= endpoint_.max_retries; ++n) {
        res = attempt();
        if (!res.transport_failed() && !res.server_error()) return res;
        if (n == endpoint_.max_retries) break;
        if (endpoint_.retry_backoff_base.count() > 0) {
            // exponential backoff with deterministic jitter
            auto base = endpoint_.retry_backoff_base.count();
            auto jitter = static_cast<long long>(
                util::fnv1a64(std::to_string(n)) % static_cast<std::uint64_t>(base));
            std::this_thread::sleep_for(
                std::chrono::milliseconds((base << n) + jitter));
        }
    }
    if (res.transport_failed()) {
        throw TransportError("transport failed after " +
                             std::to_string(endpoint_.max_retries + 1) + " attempts: " + res.body);
    }
    throw TransportError("provider kept failing (status " + std::to_string(res.status) +
                         ") after " + std::to_string(endpoint_.max_retries + 1) + " attempts");
}

std::string HostedClient::upload_training_file(const std::string& path) const {
    if (!std::filesystem::exists(path)) {
        throw std::invalid_argument("training file does not exist: " + path);
    }
    corpus::validate_chat_file(path);  // throws with a line number; nothing was sent yet

    const std::string bytes = util::read_file(path);
    const std::string filename = std::filesystem::path(path).filename().string();
    HttpResponse res = with_retries(
        [&] { return transport_->post_file("/v1/files", "file", filename, bytes); });
    if (res.status != 200) raise_provider_error(res);
    json j = parse_body(res);
    if (!j.contains("id") || !j["id"].is_string()) {
        throw ProviderError("upload response missing file id", res.status);
    }
    return j["id"].get<std::string>();
}

FineTuneJob HostedClient::create_job(const std::string& file_id, const HostedHyperparams& hp,
                                     const std::string& base_model) const {
    validate_hyperparams(hp);
    if (file_id.empty()) throw std::invalid_argument("file_id is empty");
    if (base_model.empty()) throw std::invalid_argument("base_model is empty");

    json body{{"model", base_model},
              {"training_file", file_id},
              {"hyperparameters",
               {{"n_epochs", hp.n_epochs},
                {"batch_size", hp.batch_size},
                {"learning_rate_multiplier", hp.learning_rate_multiplier}}}};
    HttpResponse res =
        with_retries([&] { return transport_->post_json("/v1/fine_tuning/jobs", body.dump()); });
    if (res.status != 200) raise_provider_error(res);
    return job_from_body(res);
}

FineTuneJob HostedClient::retrieve_job(const std::string& job_id) const {
    HttpResponse res =
        with_retries([&] { return transport_->get("/v1/fine_tuning/jobs/" + job_id); });
    if (res.status != 200) raise_provider_error(res);
    return job_from_body(res);
}

PollResult HostedClient::poll_job(const std::string& job_id, std::chrono::milliseconds interval,
                                  std::chrono::milliseconds deadline) const {
    const auto start = std::chrono::steady_clock::now();
    PollResult result;
    while (true) {
        result.job = retrieve_job(job_id);
        if (is_terminal(result.job.status)) return result;
        const auto elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed >= deadline) {
            result.timed_out = true;
            return result;
        }
        if (interval.count() > 0) std::this_thread::sleep_for(interval);
    }
}

std::string HostedClient::complete(const std::string& model_id,
                                   const std::vector<infer::ChatMessage>& messages) const {
    json msgs = json::array();
    for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
    json body{{"model", model_id}, {"messages", msgs}};
    HttpResponse res =
        with_retries([&] { return transport_->post_json("/v1/chat/completions", body.dump()); });
    if (res.status != 200) raise_provider_error(res);
    json j = parse_body(res);
    try {
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
        throw ProviderError("completion response missing choices[0].message.content", res.status);
    }
}

}  // namespace depkit::hosted
