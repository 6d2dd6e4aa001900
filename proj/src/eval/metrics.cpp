#include "depkit/eval/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace depkit::eval {

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> golds) {
    if (predictions.size() != golds.size()) {
        throw std::invalid_argument("prediction/gold length mismatch: " +
                                    std::to_string(predictions.size()) + " vs " +
                                    std::to_string(golds.size()));
    }
    if (predictions.empty()) throw std::invalid_argument("empty prediction list");
    ConfusionMatrix cm;
    for (size_t i = 0; i < predictions.size(); ++i) {
        const bool pred_pos = predictions[i] == Label::DEPRESSED;
        const bool gold_pos = golds[i] == Label::DEPRESSED;
        if (pred_pos && gold_pos) ++cm.tp;
        else if (!pred_pos && !gold_pos) ++cm.tn;
        else if (pred_pos && !gold_pos) ++cm.fp;
        else ++cm.fn;
    }
    return cm;
}

std::optional<double> precision(const ConfusionMatrix& cm) {
    const auto denom = cm.tp + cm.fp;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(cm.tp) / static_cast<double>(denom);
}

std::optional<double> recall(const ConfusionMatrix& cm) {
    const auto denom = cm.tp + cm.fn;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(cm.tp) / static_cast<double>(denom);
}

std::optional<double> f1(const ConfusionMatrix& cm) {
    const auto denom = 2 * cm.tp + cm.fp + cm.fn;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(2 * cm.tp) / static_cast<double>(denom);
}

std::optional<double> accuracy(const ConfusionMatrix& cm) {
    const auto denom = cm.total();
    if (denom == 0) return std::nullopt;
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(denom);
}

bool f1_consistency(double precision, double recall, double reported_f1, double tol) {
    if (precision + recall <= 0.0) {
        throw std::invalid_argument("f1_consistency requires precision + recall > 0");
    }
    const double harmonic = 2.0 * precision * recall / (precision + recall);
    return std::fabs(harmonic - reported_f1) <= tol;
}

MetricsReport metrics_report(const ConfusionMatrix& cm, std::string model_name) {
    if (cm.total() < 1) throw std::invalid_argument("confusion matrix is empty");
    MetricsReport r;
    r.model_name = std::move(model_name);
    r.precision = precision(cm);
    r.recall = recall(cm);
    r.f1 = f1(cm);
    r.accuracy = accuracy(cm);
    r.n = cm.total();
    return r;
}

}  // namespace depkit::eval
