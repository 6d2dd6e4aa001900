#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "depkit/trainer/backend.hpp"

namespace depkit::trainer {

// Replays a fixed loss schedule; used to verify that recording and export
// transport externally produced loss values without distortion.
class ScriptedBackend final : public TrainerBackend {
public:
    struct EpochLosses {
        double train;
        double val;
    };

    explicit ScriptedBackend(std::vector<EpochLosses> schedule,
                             std::optional<double> full_val = std::nullopt)
        : schedule_(std::move(schedule)), full_val_(full_val) {
        if (schedule_.empty()) throw std::invalid_argument("empty loss schedule");
    }

    std::string id() const override { return "scripted-replay"; }

    void prepare(std::span<const TrainExample>) override { cursor_ = 0; }

    double fit_epoch(std::span<const TrainExample>, const TrainConfig&) override {
        if (cursor_ >= schedule_.size()) throw std::runtime_error("loss schedule exhausted");
        return schedule_[cursor_++].train;
    }

    // Repeatable between fit_epoch calls: reads the losses of the epoch the
    // cursor just finished.
    double evaluate(std::span<const TrainExample>) const override {
        if (cursor_ == 0) throw std::logic_error("evaluate before first epoch");
        return schedule_[cursor_ - 1].val;
    }

    double full_validation(std::span<const TrainExample> val) const override {
        return full_val_ ? *full_val_ : evaluate(val);
    }

    nlohmann::json snapshot_state() const override {
        return nlohmann::json{{"backend", "scripted-replay"}, {"epochs_done", cursor_}};
    }

private:
    std::vector<EpochLosses> schedule_;
    std::optional<double> full_val_;
    size_t cursor_ = 0;
};

}  // namespace depkit::trainer
