#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "depkit/infer/prompt.hpp"

namespace depkit::cli {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRemote = 3;

struct TemplateArgs {
    std::optional<std::string> system_instruction;
    std::optional<std::string> user_wrapper;
    std::optional<std::string> positive_keyword;
    std::optional<std::string> negative_keyword;

    infer::PromptTemplate resolve() const;
};

struct CurateArgs {
    std::string posts_path;
    std::string emoji_lib_path;
    std::optional<std::string> d3_labels_path;
    std::string out_dir = "out";
    std::vector<std::string> extra_diagnosis_patterns;
    std::string anchor_term = "depress";
    std::string window_start = "2016-12-01T00:00:00Z";
    std::string window_end = "2017-01-01T00:00:00Z";
    double ratio_train = 0.8;
    double ratio_val = 0.1;
    double ratio_test = 0.1;
    std::int64_t seed = 42;
};

struct ExportArgs {
    std::string corpus_path;
    std::string split = "train";
    std::string out_path;
    TemplateArgs tmpl;
};

struct TrainArgs {
    std::string corpus_path;
    std::optional<std::string> config_path;
    std::string out_dir = "out";
    std::optional<int> epochs;
    std::optional<double> learning_rate;
    std::optional<double> lora_dropout;
    std::optional<int> lora_r;
    std::optional<std::int64_t> seed;
    std::size_t vocab_size = 2000;
    bool prune_to_best = false;
};

struct FinetuneHostedArgs {
    std::string training_file;
    std::string base_model = "gpt-3.5-turbo-1106";
    int n_epochs = 4;
    int batch_size = 4;
    double learning_rate_multiplier = 1.57;
    std::optional<std::string> base_url;  // falls back to DEPKIT_BASE_URL
    std::string out_dir = "out";
    int poll_interval_ms = 200;
    int deadline_s = 600;
    int max_retries = 3;
    bool force = false;
};

struct PredictArgs {
    std::optional<std::string> checkpoint_path;  // local path
    std::optional<std::string> hosted_model;     // hosted path
    std::optional<std::string> posts_path;
    std::optional<std::string> corpus_path;
    std::string split = "test";
    std::string out_path = "predictions.jsonl";
    TemplateArgs tmpl;
    std::optional<std::string> base_url;
    double max_requests_per_s = 0.0;
    int max_in_flight = 4;
    int max_retries = 3;
};

struct EvaluateArgs {
    std::string predictions_path;
    std::string corpus_path;
    std::string split = "test";
    std::string model_name = "model";
    std::string out_dir = "out";
    bool strict_unparsed = false;
};

struct ReportArgs {
    std::vector<std::string> inputs;  // metrics JSON files (object or array)
    std::string format = "text";
    std::optional<std::string> out_path;
    std::vector<std::string> loss_csvs;  // validated and copied next to the table
    std::string out_dir = "out";
};

struct MockProviderArgs {
    int port = 0;  // 0 picks a free port
    std::optional<std::string> script_path;
};

int cmd_curate(const CurateArgs& args, std::ostream& out, std::ostream& err);
int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err);
int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err);
int cmd_finetune_hosted(const FinetuneHostedArgs& args, std::ostream& out, std::ostream& err);
int cmd_predict(const PredictArgs& args, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err);
int cmd_mock_provider(const MockProviderArgs& args, std::ostream& out, std::ostream& err);

// Environment variable names for the hosted provider.
inline constexpr const char* kCredentialEnv = "DEPKIT_API_KEY";
inline constexpr const char* kBaseUrlEnv = "DEPKIT_BASE_URL";

}  // namespace depkit::cli
