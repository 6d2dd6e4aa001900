#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace depkit::hosted {

struct HostedHyperparams {
    int n_epochs = 4;
    int batch_size = 4;
    double learning_rate_multiplier = 1.57;  // transmitted opaquely, never applied locally
};

void validate_hyperparams(const HostedHyperparams& hp);

enum class JobStatus { QUEUED, RUNNING, SUCCEEDED, FAILED, CANCELLED };

bool is_terminal(JobStatus s);
std::string to_string(JobStatus s);
JobStatus job_status_from_string(const std::string& s);

// True only for QUEUED->RUNNING, QUEUED->CANCELLED, RUNNING->{SUCCEEDED,
// FAILED, CANCELLED}, and self-loops on non-terminal states.
bool job_transition_valid(JobStatus from, JobStatus to);

struct FineTuneJob {
    std::string job_id;
    JobStatus status = JobStatus::QUEUED;
    std::string training_file_id;
    std::string base_model;
    HostedHyperparams hyperparams;
    std::optional<std::string> fine_tuned_model_id;  // present iff SUCCEEDED
    std::int64_t created_at = 0;
    std::optional<std::int64_t> finished_at;  // present iff terminal
    std::optional<std::string> provider_error;

    void check_invariants() const;
};

FineTuneJob job_from_json(const nlohmann::json& j);
nlohmann::json job_to_json(const FineTuneJob& job);

struct ProviderEndpoint {
    std::string base_url;
    std::string credential;  // never serialized
    std::chrono::milliseconds request_timeout{10000};
    int max_retries = 3;
    std::chrono::milliseconds retry_backoff_base{250};
};

// Deliberately omits the credential.
nlohmann::json endpoint_to_json(const ProviderEndpoint& ep);

}  // namespace depkit::hosted
