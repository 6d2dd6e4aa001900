#pragma once

#include <string>
#include <vector>

#include "depkit/eval/metrics.hpp"

namespace depkit::eval {

enum class ReportFormat { TEXT, CSV };

struct ComparativeReport {
    std::vector<MetricsReport> rows;
};

// Columns: Model, Accuracy (%), Precision, Recall, F1-Score. Accuracy renders
// as a percentage with at most one decimal, the other metrics with three.
// Throws on empty input or duplicate model names.
std::string render_report(const std::vector<MetricsReport>& rows, ReportFormat format);

// 2x2 CSV, rows = actual, columns = predicted.
std::string confusion_csv(const ConfusionMatrix& cm);

}  // namespace depkit::eval
