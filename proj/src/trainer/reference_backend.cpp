#include "depkit/trainer/reference_backend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "depkit/util/strings.hpp"

namespace depkit::trainer {

namespace {

// log(1 + e^s) without overflow
double log1p_exp(double s) {
    return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

double sigmoid(double s) {
    return s >= 0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
}

double score(const std::vector<double>& weights, const SparseCounts& x) {
    double s = weights.back();  // bias
    for (const auto& [idx, count] : x) s += weights[idx] * count;
    return s;
}

}  // namespace

SparseCounts featurize_bow(std::string_view text, const std::vector<std::string>& vocab) {
    std::unordered_map<std::string, std::uint32_t> index;
    index.reserve(vocab.size());
    for (std::uint32_t i = 0; i < vocab.size(); ++i) {
        if (!index.emplace(vocab[i], i).second) {
            throw std::invalid_argument("vocabulary contains duplicate token: " + vocab[i]);
        }
    }
    std::map<std::uint32_t, double> counts;
    for (const auto& token : util::split_whitespace(util::to_lower_ascii(text))) {
        auto it = index.find(token);
        if (it != index.end()) counts[it->second] += 1.0;
    }
    return SparseCounts(counts.begin(), counts.end());
}

std::vector<std::string> build_vocab(std::span<const TrainExample> examples, size_t max_size) {
    std::map<std::string, size_t> freq;
    for (const auto& ex : examples) {
        for (const auto& token : util::split_whitespace(util::to_lower_ascii(ex.text))) {
            ++freq[token];
        }
    }
    std::vector<std::pair<std::string, size_t>> items(freq.begin(), freq.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (items.size() > max_size) items.resize(max_size);
    std::vector<std::string> vocab;
    vocab.reserve(items.size());
    for (auto& [token, _] : items) vocab.push_back(std::move(token));
    return vocab;
}

LossAndGrad logistic_loss_grad(const std::vector<double>& weights,
                               std::span<const SparseCounts> features,
                               std::span<const int> labels) {
    if (features.size() != labels.size() || features.empty()) {
        throw std::invalid_argument("features/labels must be non-empty and equal length");
    }
    LossAndGrad out;
    out.grad.assign(weights.size(), 0.0);
    const double inv_n = 1.0 / static_cast<double>(features.size());
    for (size_t i = 0; i < features.size(); ++i) {
        const double s = score(weights, features[i]);
        const double y = labels[i] ? 1.0 : 0.0;
        // -[y log p + (1-y) log(1-p)] = log(1+e^s) - y*s
        out.loss += log1p_exp(s) - y * s;
        const double residual = (sigmoid(s) - y) * inv_n;
        for (const auto& [idx, count] : features[i]) out.grad[idx] += residual * count;
        out.grad.back() += residual;
    }
    out.loss *= inv_n;
    return out;
}

double logistic_loss(const std::vector<double>& weights, std::span<const SparseCounts> features,
                     std::span<const int> labels) {
    if (features.size() != labels.size() || features.empty()) {
        throw std::invalid_argument("features/labels must be non-empty and equal length");
    }
    double loss = 0.0;
    for (size_t i = 0; i < features.size(); ++i) {
        const double s = score(weights, features[i]);
        loss += log1p_exp(s) - (labels[i] ? 1.0 : 0.0) * s;
    }
    return loss / static_cast<double>(features.size());
}

ReferenceBackend::ReferenceBackend(size_t vocab_size, double learning_rate, std::int64_t seed)
    : vocab_size_(vocab_size), learning_rate_(learning_rate), seed_(seed) {
    if (vocab_size < 2) throw std::invalid_argument("vocab_size must be >= 2");
    if (!(learning_rate > 0)) throw std::invalid_argument("learning rate must be positive");
}

std::string ReferenceBackend::id() const {
    return "reference-logistic-bow(vocab=" + std::to_string(vocab_size_) +
           ",seed=" + std::to_string(seed_) + ")";
}

void ReferenceBackend::prepare(std::span<const TrainExample> train) {
    vocab_ = build_vocab(train, vocab_size_);
    weights_.assign(vocab_.size() + 1, 0.0);
    train_features_.clear();
    train_features_.reserve(train.size());
    for (const auto& ex : train) train_features_.push_back(featurize_bow(ex.text, vocab_));
    prepared_ = true;
}

double ReferenceBackend::fit_epoch(std::span<const TrainExample> train, const TrainConfig&) {
    if (!prepared_) throw std::logic_error("fit_epoch called before prepare");
    if (train_features_.size() != train.size()) {
        throw std::invalid_argument("train split changed since prepare");
    }
    std::vector<int> labels(train.size());
    for (size_t i = 0; i < train.size(); ++i) labels[i] = train[i].label;

    // full-batch step; the learning rate is the one the backend was built with
    auto lg = logistic_loss_grad(weights_, train_features_, labels);
    for (size_t i = 0; i < weights_.size(); ++i) weights_[i] -= learning_rate_ * lg.grad[i];
    return lg.loss;
}

double ReferenceBackend::evaluate(std::span<const TrainExample> val) const {
    if (!prepared_) throw std::logic_error("evaluate called before prepare");
    std::vector<SparseCounts> features;
    features.reserve(val.size());
    std::vector<int> labels;
    labels.reserve(val.size());
    for (const auto& ex : val) {
        features.push_back(featurize_bow(ex.text, vocab_));
        labels.push_back(ex.label);
    }
    return logistic_loss(weights_, features, labels);
}

double ReferenceBackend::predict_proba(std::string_view text) const {
    if (!prepared_) throw std::logic_error("predict_proba called before prepare");
    return sigmoid(score(weights_, featurize_bow(text, vocab_)));
}

nlohmann::json ReferenceBackend::snapshot_state() const {
    return nlohmann::json{{"backend", "reference-logistic-bow"},
                          {"vocab_size", vocab_size_},
                          {"learning_rate", learning_rate_},
                          {"seed", seed_},
                          {"vocab", vocab_},
                          {"weights", weights_}};
}

ReferenceBackend ReferenceBackend::from_state(const nlohmann::json& state) {
    if (!state.contains("backend") || state["backend"] != "reference-logistic-bow") {
        throw std::invalid_argument("state is not a reference-logistic-bow snapshot");
    }
    ReferenceBackend b(state["vocab_size"].get<size_t>(), state["learning_rate"].get<double>(),
                       state["seed"].get<std::int64_t>());
    b.vocab_ = state["vocab"].get<std::vector<std::string>>();
    b.weights_ = state["weights"].get<std::vector<double>>();
    if (b.weights_.size() != b.vocab_.size() + 1) {
        throw std::invalid_argument("snapshot weight/vocab size mismatch");
    }
    b.prepared_ = true;
    return b;
}

std::unique_ptr<TrainerBackend> reference_backend(size_t vocab_size, double learning_rate,
                                                  std::int64_t seed) {
    return std::make_unique<ReferenceBackend>(vocab_size, learning_rate, seed);
}

}  // namespace depkit::trainer
