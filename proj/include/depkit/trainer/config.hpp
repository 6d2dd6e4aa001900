#pragma once

#include <cstdint>
#include <string>

namespace depkit::trainer {

enum class LoraBias { NONE, ALL, LORA_ONLY };
enum class TaskType { CAUSAL_LM };
enum class EpochStrategy { EPOCH };
enum class SchedulerType { CONSTANT };

struct LoraConfig {
    double lora_alpha = 128.0;
    double lora_dropout = 0.0;
    int r = 64;  // adapter rank
    LoraBias bias = LoraBias::NONE;
    TaskType task_type = TaskType::CAUSAL_LM;
};

struct TrainConfig {
    int num_train_epochs = 20;
    int per_device_train_batch_size = 4;
    int per_device_eval_batch_size = 4;
    int gradient_accumulation_steps = 1;
    EpochStrategy eval_strategy = EpochStrategy::EPOCH;
    EpochStrategy logging_strategy = EpochStrategy::EPOCH;
    EpochStrategy save_strategy = EpochStrategy::EPOCH;
    bool do_eval = true;
    std::string optim = "paged_adamw_32bit";  // recorded for real backends, not interpreted
    double learning_rate = 1e-4;
    double weight_decay = 0.0;
    bool fp16 = false;  // accepted and ignored by the reference backend
    bool bf16 = false;
    double max_grad_norm = 0.3;
    std::int64_t max_steps = -1;  // provider sentinel, passed through untouched
    double warmup_ratio = 0.03;
    bool group_by_length = true;
    SchedulerType lr_scheduler_type = SchedulerType::CONSTANT;
    std::int64_t seed = 42;
};

// Returns the pair unchanged when every invariant holds; otherwise throws
// with a per-field message.
void validate_configs(const LoraConfig& lora, const TrainConfig& train);

// Flat `key = value` document whose keys mirror the training-parameter table
// (lora_alpha, num_train_epochs, ...). Unknown keys are errors.
struct ConfigFile {
    LoraConfig lora;
    TrainConfig train;
};

ConfigFile parse_config_text(const std::string& text, const std::string& origin);
ConfigFile load_config_file(const std::string& path);

// Canonical key=value dump used for fingerprints and manifests.
std::string dump_config(const LoraConfig& lora, const TrainConfig& train);

// Stable hash over LoraConfig + TrainConfig + seed.
std::string config_fingerprint(const LoraConfig& lora, const TrainConfig& train);

std::string to_string(LoraBias b);
std::string to_string(TaskType t);
std::string to_string(EpochStrategy s);
std::string to_string(SchedulerType s);

}  // namespace depkit::trainer
