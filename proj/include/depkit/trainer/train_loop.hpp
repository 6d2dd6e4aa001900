#pragma once

#include <functional>
#include <string>
#include <vector>

#include "depkit/corpus/types.hpp"
#include "depkit/trainer/backend.hpp"
#include "depkit/trainer/config.hpp"

namespace depkit::trainer {

struct EpochMetrics {
    int epoch = 0;  // 1-based
    double train_loss = 0.0;
    double val_loss = 0.0;
    double wall_time_s = 0.0;
};

struct TrainResult {
    ModelHandle model;
    std::vector<EpochMetrics> metrics;
    double full_val_loss = 0.0;  // whole VAL split, measured once after the last epoch
    bool failed = false;
    std::string failure;  // set when a backend error aborted the run mid-epoch
    int failed_epoch = 0;
};

// Receives (epoch, snapshot_state) after every epoch.
using CheckpointSink = std::function<void(int, const nlohmann::json&)>;

std::vector<TrainExample> to_train_examples(
    const std::vector<const corpus::LabeledExample*>& view);

// Runs exactly cfg.num_train_epochs epochs with per-epoch evaluation and
// checkpointing. On a backend failure the run aborts and the metrics
// collected so far are preserved alongside the failure marker.
TrainResult train(TrainerBackend& backend, const corpus::LabeledCorpus& corpus,
                  const LoraConfig& lora, const TrainConfig& cfg,
                  const CheckpointSink& sink = {});

// Header `epoch,train_loss,val_loss`, one row per epoch, 6-decimal fixed
// point. Returns the number of data rows written.
size_t export_loss_csv(const std::vector<EpochMetrics>& metrics, const std::string& path);

std::string loss_csv_string(const std::vector<EpochMetrics>& metrics);

}  // namespace depkit::trainer
