#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace depkit::eval {

enum class Label { DEPRESSED, NON_DEPRESSED };

// Binary counts with DEPRESSED as the positive class.
struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }
};

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> golds);

// Each metric returns nullopt when its denominator is zero; callers must not
// substitute 0 for an undefined value.
std::optional<double> precision(const ConfusionMatrix& cm);
std::optional<double> recall(const ConfusionMatrix& cm);
std::optional<double> f1(const ConfusionMatrix& cm);
std::optional<double> accuracy(const ConfusionMatrix& cm);

// True iff |2PR/(P+R) - reported_f1| <= tol. Requires precision+recall > 0.
bool f1_consistency(double precision, double recall, double reported_f1, double tol);

struct MetricsReport {
    std::string model_name;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> accuracy;
    std::int64_t n = 0;
};

MetricsReport metrics_report(const ConfusionMatrix& cm, std::string model_name);

}  // namespace depkit::eval
