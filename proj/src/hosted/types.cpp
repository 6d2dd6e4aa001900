#include "depkit/hosted/types.hpp"

#include <stdexcept>

namespace depkit::hosted {

void validate_hyperparams(const HostedHyperparams& hp) {
    if (hp.n_epochs < 1) throw std::invalid_argument("n_epochs must be >= 1");
    if (hp.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (!(hp.learning_rate_multiplier > 0)) {
        throw std::invalid_argument("learning_rate_multiplier must be positive");
    }
}

bool is_terminal(JobStatus s) {
    return s == JobStatus::SUCCEEDED || s == JobStatus::FAILED || s == JobStatus::CANCELLED;
}

std::string to_string(JobStatus s) {
    switch (s) {
        case JobStatus::QUEUED: return "queued";
        case JobStatus::RUNNING: return "running";
        case JobStatus::SUCCEEDED: return "succeeded";
        case JobStatus::FAILED: return "failed";
        case JobStatus::CANCELLED: return "cancelled";
    }
    throw std::logic_error("unreachable");
}

JobStatus job_status_from_string(const std::string& s) {
    if (s == "queued") return JobStatus::QUEUED;
    if (s == "running") return JobStatus::RUNNING;
    if (s == "succeeded") return JobStatus::SUCCEEDED;
    if (s == "failed") return JobStatus::FAILED;
    if (s == "cancelled") return JobStatus::CANCELLED;
    throw std::invalid_argument("unknown job status: " + s);
}

bool job_transition_valid(JobStatus from, JobStatus to) {
    if (from == to) return !is_terminal(from);  // polling self-loop
    switch (from) {
        case JobStatus::QUEUED:
            return to == JobStatus::RUNNING || to == JobStatus::CANCELLED;
        case JobStatus::RUNNING:
            return to == JobStatus::SUCCEEDED || to == JobStatus::FAILED ||
                   to == JobStatus::CANCELLED;
        default:
            return false;  // terminal states absorb
    }
}

void FineTuneJob::check_invariants() const {
    const bool has_model = fine_tuned_model_id.has_value();
    if (has_model != (status == JobStatus::SUCCEEDED)) {
        throw std::runtime_error("job " + job_id +
                                 ": fine_tuned_model_id must be present iff SUCCEEDED");
    }
    if (finished_at.has_value() != is_terminal(status)) {
        throw std::runtime_error("job " + job_id + ": finished_at must be present iff terminal");
    }
}

FineTuneJob job_from_json(const nlohmann::json& j) {
    FineTuneJob job;
    job.job_id = j.at("id").get<std::string>();
    job.status = job_status_from_string(j.at("status").get<std::string>());
    job.training_file_id = j.at("training_file").get<std::string>();
    job.base_model = j.value("model", std::string{});
    const auto& hp = j.at("hyperparameters");
    job.hyperparams.n_epochs = hp.at("n_epochs").get<int>();
    job.hyperparams.batch_size = hp.at("batch_size").get<int>();
    job.hyperparams.learning_rate_multiplier = hp.at("learning_rate_multiplier").get<double>();
    if (j.contains("fine_tuned_model") && !j["fine_tuned_model"].is_null()) {
        job.fine_tuned_model_id = j["fine_tuned_model"].get<std::string>();
    }
    job.created_at = j.value("created_at", std::int64_t{0});
    if (j.contains("finished_at") && !j["finished_at"].is_null()) {
        job.finished_at = j["finished_at"].get<std::int64_t>();
    }
    if (j.contains("error") && !j["error"].is_null()) {
        job.provider_error = j["error"].value("message", std::string{});
    }
    return job;
}

nlohmann::json job_to_json(const FineTuneJob& job) {
    nlohmann::json j{{"id", job.job_id},
                     {"object", "fine_tuning.job"},
                     {"status", to_string(job.status)},
                     {"training_file", job.training_file_id},
                     {"model", job.base_model},
                     {"hyperparameters",
                      {{"n_epochs", job.hyperparams.n_epochs},
                       {"batch_size", job.hyperparams.batch_size},
                       {"learning_rate_multiplier", job.hyperparams.learning_rate_multiplier}}},
                     {"created_at", job.created_at}};
    j["fine_tuned_model"] =
        job.fine_tuned_model_id ? nlohmann::json(*job.fine_tuned_model_id) : nlohmann::json();
    j["finished_at"] = job.finished_at ? nlohmann::json(*job.finished_at) : nlohmann::json();
    if (job.provider_error) j["error"] = {{"message", *job.provider_error}};
    return j;
}

nlohmann::json endpoint_to_json(const ProviderEndpoint& ep) {
    return nlohmann::json{{"base_url", ep.base_url},
                          {"request_timeout_ms", ep.request_timeout.count()},
                          {"max_retries", ep.max_retries}};
}

}  // namespace depkit::hosted
