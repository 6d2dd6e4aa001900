#pragma once

#include <string>
#include <vector>

#include "depkit/corpus/types.hpp"
#include "depkit/hosted/client.hpp"
#include "depkit/infer/prompt.hpp"
#include "depkit/trainer/reference_backend.hpp"

namespace depkit::infer {

enum class PredictionLabel { DEPRESSED, NON_DEPRESSED, UNPARSED, FAILED };

std::string to_string(PredictionLabel l);
PredictionLabel prediction_label_from_string(const std::string& s);

struct Prediction {
    std::string post_id;
    PredictionLabel label = PredictionLabel::UNPARSED;
    std::string raw_output;
    double latency_ms = 0.0;
};

// Local reference-model path: no prompting, thresholds the classifier
// probability (exactly 0.5 resolves to NON_DEPRESSED). Deterministic and
// sequential.
std::vector<Prediction> predict_batch_local(const trainer::ReferenceBackend& model,
                                            const std::vector<corpus::Post>& posts);

struct HostedPredictOptions {
    double max_requests_per_s = 0.0;  // 0 = unthrottled
    int max_in_flight = 4;
};

// Hosted path: renders the prompt per post and parses the completion text.
// Requests may overlap up to max_in_flight; output order follows input order.
// A post whose request still fails after the client's retries is marked
// FAILED and the batch continues.
std::vector<Prediction> predict_batch_hosted(const hosted::HostedClient& client,
                                             const std::string& model_id,
                                             const std::vector<corpus::Post>& posts,
                                             const PromptTemplate& tmpl,
                                             const HostedPredictOptions& options = {});

void write_predictions_jsonl(const std::vector<Prediction>& predictions,
                             const std::string& path);
std::vector<Prediction> read_predictions_jsonl(const std::string& path);

}  // namespace depkit::infer
