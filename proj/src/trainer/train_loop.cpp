#include "depkit/trainer/train_loop.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "depkit/util/jsonl.hpp"
#include "depkit/util/strings.hpp"

namespace depkit::trainer {

std::vector<TrainExample> to_train_examples(
    const std::vector<const corpus::LabeledExample*>& view) {
    std::vector<TrainExample> out;
    out.reserve(view.size());
    for (const auto* ex : view) {
        out.push_back({ex->normalized_text, ex->label == corpus::Label::DEPRESSED ? 1 : 0});
    }
    return out;
}

TrainResult train(TrainerBackend& backend, const corpus::LabeledCorpus& corpus,
                  const LoraConfig& lora, const TrainConfig& cfg, const CheckpointSink& sink) {
    validate_configs(lora, cfg);
    auto train_set = to_train_examples(corpus.split_view(corpus::Split::TRAIN));
    auto val_set = to_train_examples(corpus.split_view(corpus::Split::VAL));
    if (train_set.empty()) throw std::invalid_argument("TRAIN split is empty");
    if (val_set.empty()) throw std::invalid_argument("VAL split is empty");

    TrainResult result;
    result.model.backend_id = backend.id();
    result.model.config_fingerprint = config_fingerprint(lora, cfg);

    backend.prepare(train_set);
    for (int epoch = 1; epoch <= cfg.num_train_epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        EpochMetrics m;
        m.epoch = epoch;
        try {
            m.train_loss = backend.fit_epoch(train_set, cfg);
            m.val_loss = backend.evaluate(val_set);
        } catch (const std::exception& e) {
            result.failed = true;
            result.failure = e.what();
            result.failed_epoch = epoch;
            break;
        }
        if (!std::isfinite(m.train_loss) || !std::isfinite(m.val_loss)) {
            result.failed = true;
            result.failure = "non-finite loss at epoch " + std::to_string(epoch);
            result.failed_epoch = epoch;
            break;
        }
        m.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.metrics.push_back(m);
        result.model.checkpoint_ref = "epoch-" + std::to_string(epoch);
        if (sink) sink(epoch, backend.snapshot_state());
    }
    if (!result.failed) {
        result.full_val_loss = backend.full_validation(val_set);
    }
    return result;
}

std::string loss_csv_string(const std::vector<EpochMetrics>& metrics) {
    if (metrics.empty()) throw std::invalid_argument("no epoch metrics to export");
    std::ostringstream out;
    out << "epoch,train_loss,val_loss\n";
    for (const auto& m : metrics) {
        out << m.epoch << ',' << util::format_fixed(m.train_loss, 6) << ','
            << util::format_fixed(m.val_loss, 6) << '\n';
    }
    return out.str();
}

size_t export_loss_csv(const std::vector<EpochMetrics>& metrics, const std::string& path) {
    util::write_file_atomic(path, loss_csv_string(metrics));
    return metrics.size();
}

}  // namespace depkit::trainer
