#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "depkit/trainer/config.hpp"

namespace depkit::trainer {

struct TrainExample {
    std::string text;
    int label = 0;  // 1 = depressed
};

struct ModelHandle {
    std::string backend_id;
    std::string checkpoint_ref;       // opaque: epoch tag or file path
    std::string config_fingerprint;   // covers LoraConfig + TrainConfig + seed
};

// Epoch-driven training surface. Implementations must be deterministic given
// their seed; evaluate() must not mutate parameters.
class TrainerBackend {
public:
    virtual ~TrainerBackend() = default;

    virtual std::string id() const = 0;

    // Called once before the first epoch with the TRAIN split.
    virtual void prepare(std::span<const TrainExample> train) = 0;

    // Runs one epoch and returns the mean training loss measured before the
    // parameter update.
    virtual double fit_epoch(std::span<const TrainExample> train, const TrainConfig& cfg) = 0;

    virtual double evaluate(std::span<const TrainExample> val) const = 0;

    // Loss over the whole validation set after training has finished. For
    // most backends this is evaluate(); hosted-style loss reports distinguish
    // the two.
    virtual double full_validation(std::span<const TrainExample> val) const {
        return evaluate(val);
    }

    // Parameter snapshot for checkpointing; shape is backend-specific.
    virtual nlohmann::json snapshot_state() const = 0;
};

}  // namespace depkit::trainer
