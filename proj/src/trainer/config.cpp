#include "depkit/trainer/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "depkit/util/hash.hpp"
#include "depkit/util/jsonl.hpp"
#include "depkit/util/strings.hpp"

namespace depkit::trainer {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(key + ": expected a number, got '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        std::int64_t v = std::stoll(value, &used, 10);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(key + ": expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    std::string v = util::to_lower_ascii(value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(key + ": expected true/false, got '" + value + "'");
}

LoraBias parse_bias(const std::string& value) {
    std::string v = util::to_lower_ascii(value);
    if (v == "none") return LoraBias::NONE;
    if (v == "all") return LoraBias::ALL;
    if (v == "lora_only") return LoraBias::LORA_ONLY;
    fail("bias: expected none/all/lora_only, got '" + value + "'");
}

}  // namespace

std::string to_string(LoraBias b) {
    switch (b) {
        case LoraBias::NONE: return "none";
        case LoraBias::ALL: return "all";
        case LoraBias::LORA_ONLY: return "lora_only";
    }
    throw std::logic_error("unreachable");
}

std::string to_string(TaskType) { return "CAUSAL_LM"; }
std::string to_string(EpochStrategy) { return "epoch"; }
std::string to_string(SchedulerType) { return "constant"; }

void validate_configs(const LoraConfig& lora, const TrainConfig& train) {
    if (!(lora.lora_alpha > 0)) fail("lora_alpha must be positive");
    if (lora.lora_dropout < 0.0 || lora.lora_dropout > 1.0) fail("lora_dropout out of range [0,1]");
    if (lora.r < 1) fail("rank must be >= 1");

    if (train.num_train_epochs < 1) fail("num_train_epochs must be >= 1");
    if (train.per_device_train_batch_size < 1) fail("per_device_train_batch_size must be >= 1");
    if (train.per_device_eval_batch_size < 1) fail("per_device_eval_batch_size must be >= 1");
    if (train.gradient_accumulation_steps < 1) fail("gradient_accumulation_steps must be >= 1");
    if (!(train.learning_rate > 0)) fail("learning_rate must be positive");
    if (train.weight_decay < 0) fail("weight_decay must be non-negative");
    if (!train.do_eval) fail("do_eval = false is not supported; validation runs every epoch");
    if (!(train.max_grad_norm > 0)) fail("max_grad_norm must be positive");
    if (train.warmup_ratio < 0.0 || train.warmup_ratio >= 1.0) fail("warmup_ratio out of range [0,1)");
}

ConfigFile parse_config_text(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = util::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            fail(origin + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = util::trim(trimmed.substr(0, eq));
        std::string value = util::trim(trimmed.substr(eq + 1));

        if (key == "lora_alpha") cfg.lora.lora_alpha = parse_double(key, value);
        else if (key == "lora_dropout") cfg.lora.lora_dropout = parse_double(key, value);
        else if (key == "r") cfg.lora.r = static_cast<int>(parse_int(key, value));
        else if (key == "bias") cfg.lora.bias = parse_bias(value);
        else if (key == "task_type") {
            if (util::to_lower_ascii(value) != "causal_lm") {
                fail("task_type: only CAUSAL_LM is supported, got '" + value + "'");
            }
        } else if (key == "num_train_epochs") {
            cfg.train.num_train_epochs = static_cast<int>(parse_int(key, value));
        } else if (key == "per_device_train_batch_size") {
            cfg.train.per_device_train_batch_size = static_cast<int>(parse_int(key, value));
        } else if (key == "per_device_eval_batch_size") {
            cfg.train.per_device_eval_batch_size = static_cast<int>(parse_int(key, value));
        } else if (key == "gradient_accumulation_steps") {
            cfg.train.gradient_accumulation_steps = static_cast<int>(parse_int(key, value));
        } else if (key == "eval_strategy" || key == "logging_strategy" || key == "save_strategy") {
            if (util::to_lower_ascii(value) != "epoch") {
                fail(key + ": only 'epoch' is supported, got '" + value + "'");
            }
        } else if (key == "do_eval") cfg.train.do_eval = parse_bool(key, value);
        else if (key == "optim") cfg.train.optim = value;
        else if (key == "learning_rate") cfg.train.learning_rate = parse_double(key, value);
        else if (key == "weight_decay") cfg.train.weight_decay = parse_double(key, value);
        else if (key == "fp16") cfg.train.fp16 = parse_bool(key, value);
        else if (key == "bf16") cfg.train.bf16 = parse_bool(key, value);
        else if (key == "max_grad_norm") cfg.train.max_grad_norm = parse_double(key, value);
        else if (key == "max_steps") cfg.train.max_steps = parse_int(key, value);
        else if (key == "warmup_ratio") cfg.train.warmup_ratio = parse_double(key, value);
        else if (key == "group_by_length") cfg.train.group_by_length = parse_bool(key, value);
        else if (key == "lr_scheduler_type") {
            if (util::to_lower_ascii(value) != "constant") {
                fail("lr_scheduler_type: only 'constant' is supported, got '" + value + "'");
            }
        } else if (key == "seed") cfg.train.seed = parse_int(key, value);
        else fail(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    validate_configs(cfg.lora, cfg.train);
    return cfg;
}

ConfigFile load_config_file(const std::string& path) {
    return parse_config_text(util::read_file(path), path);
}

std::string dump_config(const LoraConfig& lora, const TrainConfig& train) {
    std::ostringstream out;
    out << "lora_alpha = " << util::format_fixed(lora.lora_alpha, 6) << '\n'
        << "lora_dropout = " << util::format_fixed(lora.lora_dropout, 6) << '\n'
        << "r = " << lora.r << '\n'
        << "bias = " << to_string(lora.bias) << '\n'
        << "task_type = " << to_string(lora.task_type) << '\n'
        << "num_train_epochs = " << train.num_train_epochs << '\n'
        << "per_device_train_batch_size = " << train.per_device_train_batch_size << '\n'
        << "per_device_eval_batch_size = " << train.per_device_eval_batch_size << '\n'
        << "gradient_accumulation_steps = " << train.gradient_accumulation_steps << '\n'
        << "eval_strategy = " << to_string(train.eval_strategy) << '\n'
        << "logging_strategy = " << to_string(train.logging_strategy) << '\n'
        << "do_eval = " << (train.do_eval ? "true" : "false") << '\n'
        << "optim = " << train.optim << '\n'
        << "save_strategy = " << to_string(train.save_strategy) << '\n'
        << "learning_rate = " << util::format_fixed(train.learning_rate, 9) << '\n'
        << "weight_decay = " << util::format_fixed(train.weight_decay, 6) << '\n'
        << "fp16 = " << (train.fp16 ? "true" : "false") << '\n'
        << "bf16 = " << (train.bf16 ? "true" : "false") << '\n'
        << "max_grad_norm = " << util::format_fixed(train.max_grad_norm, 6) << '\n'
        << "max_steps = " << train.max_steps << '\n'
        << "warmup_ratio = " << util::format_fixed(train.warmup_ratio, 6) << '\n'
        << "group_by_length = " << (train.group_by_length ? "true" : "false") << '\n'
        << "lr_scheduler_type = " << to_string(train.lr_scheduler_type) << '\n'
        << "seed = " << train.seed << '\n';
    return out.str();
}

std::string config_fingerprint(const LoraConfig& lora, const TrainConfig& train) {
    return util::fnv1a64_hex(dump_config(lora, train));
}

}  // namespace depkit::trainer
