#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "depkit/trainer/backend.hpp"

namespace depkit::trainer {

// Sparse bag-of-words counts over a fixed vocabulary. Tokens are lowercased
// whitespace-split words; out-of-vocabulary tokens are dropped.
using SparseCounts = std::vector<std::pair<std::uint32_t, double>>;

SparseCounts featurize_bow(std::string_view text, const std::vector<std::string>& vocab);

// Top-K tokens by frequency over the given texts, ties broken lexicographically.
std::vector<std::string> build_vocab(std::span<const TrainExample> examples, size_t max_size);

struct LossAndGrad {
    double loss = 0.0;
    std::vector<double> grad;  // d(mean loss)/d(weights), bias last
};

// Mean binary cross-entropy of a logistic model and its analytic gradient.
// `weights` has one entry per vocab slot plus a trailing bias.
LossAndGrad logistic_loss_grad(const std::vector<double>& weights,
                               std::span<const SparseCounts> features,
                               std::span<const int> labels);

double logistic_loss(const std::vector<double>& weights, std::span<const SparseCounts> features,
                     std::span<const int> labels);

// Logistic bag-of-words classifier trained by full-batch gradient descent.
// Weights start at zero; one fit_epoch = one gradient step at the config's
// learning rate (the scheduler is constant).
class ReferenceBackend final : public TrainerBackend {
public:
    ReferenceBackend(size_t vocab_size, double learning_rate, std::int64_t seed);

    std::string id() const override;
    void prepare(std::span<const TrainExample> train) override;
    double fit_epoch(std::span<const TrainExample> train, const TrainConfig& cfg) override;
    double evaluate(std::span<const TrainExample> val) const override;
    nlohmann::json snapshot_state() const override;

    // P(depressed) for a single text under the current weights.
    double predict_proba(std::string_view text) const;

    const std::vector<std::string>& vocab() const { return vocab_; }
    const std::vector<double>& weights() const { return weights_; }

    static ReferenceBackend from_state(const nlohmann::json& state);

private:
    size_t vocab_size_;
    double learning_rate_;
    std::int64_t seed_;
    std::vector<std::string> vocab_;
    std::vector<double> weights_;  // vocab weights + bias
    std::vector<SparseCounts> train_features_;
    bool prepared_ = false;
};

std::unique_ptr<TrainerBackend> reference_backend(size_t vocab_size, double learning_rate,
                                                  std::int64_t seed);

}  // namespace depkit::trainer
