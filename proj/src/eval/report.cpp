#include "depkit/eval/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "depkit/util/strings.hpp"

namespace depkit::eval {

namespace {

std::string metric_cell(const std::optional<double>& v) {
    return v ? util::format_fixed(*v, 3) : "n/a";
}

std::string accuracy_cell(const std::optional<double>& v) {
    return v ? util::format_percent(*v) : "n/a";
}

void check_rows(const std::vector<MetricsReport>& rows) {
    if (rows.empty()) throw std::invalid_argument("report has no rows");
    std::set<std::string> names;
    for (const auto& r : rows) {
        if (!names.insert(r.model_name).second) {
            throw std::invalid_argument("duplicate model name: " + r.model_name);
        }
    }
}

std::string pad(const std::string& s, size_t width, bool right_align) {
    if (s.size() >= width) return s;
    std::string fill(width - s.size(), ' ');
    return right_align ? fill + s : s + fill;
}

}  // namespace

std::string render_report(const std::vector<MetricsReport>& rows, ReportFormat format) {
    check_rows(rows);

    const std::vector<std::string> headers = {"Model", "Accuracy (%)", "Precision", "Recall",
                                              "F1-Score"};
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) {
        cells.push_back({r.model_name, accuracy_cell(r.accuracy), metric_cell(r.precision),
                         metric_cell(r.recall), metric_cell(r.f1)});
    }

    std::ostringstream out;
    if (format == ReportFormat::CSV) {
        out << "model,accuracy_pct,precision,recall,f1\n";
        for (const auto& row : cells) {
            out << row[0] << ',' << row[1] << ',' << row[2] << ',' << row[3] << ',' << row[4]
                << '\n';
        }
        return out.str();
    }

    std::vector<size_t> widths(headers.size());
    for (size_t c = 0; c < headers.size(); ++c) {
        widths[c] = headers[c].size();
        for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
    }
    auto emit_row = [&](const std::vector<std::string>& row, bool numbers_right) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out << " | ";
            out << pad(row[c], widths[c], numbers_right && c > 0);
        }
        out << '\n';
    };
    emit_row(headers, false);
    for (size_t c = 0; c < headers.size(); ++c) {
        if (c) out << " | ";
        out << std::string(widths[c], '-');
    }
    out << '\n';
    for (const auto& row : cells) emit_row(row, true);
    return out.str();
}

std::string confusion_csv(const ConfusionMatrix& cm) {
    std::ostringstream out;
    out << ",predicted_depressed,predicted_non_depressed\n";
    out << "actual_depressed," << cm.tp << ',' << cm.fn << '\n';
    out << "actual_non_depressed," << cm.fp << ',' << cm.tn << '\n';
    return out.str();
}

}  // namespace depkit::eval
