#include "lognnet/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace lognnet {

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const std::vector<std::size_t>& row : counts)
    for (std::size_t v : row) t += v;
  return t;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  const std::size_t m = cm.classes();
  const std::size_t total = cm.total();
  if (m == 0 || total == 0)
    throw std::invalid_argument("metrics: empty confusion matrix");

  MetricsReport r;
  r.confusion = cm;
  r.precision.assign(m, 0.0);
  r.recall.assign(m, 0.0);
  r.f1.assign(m, 0.0);
  r.precision_undefined.assign(m, false);
  r.recall_undefined.assign(m, false);
  r.f1_undefined.assign(m, false);

  std::size_t trace = 0;
  for (std::size_t k = 0; k < m; ++k) trace += cm.at(k, k);
  r.accuracy = static_cast<double>(trace) / static_cast<double>(total);

  for (std::size_t k = 0; k < m; ++k) {
    std::size_t colsum = 0, rowsum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      colsum += cm.at(i, k);
      rowsum += cm.at(k, i);
    }
    const std::size_t tp = cm.at(k, k);
    if (colsum == 0)
      r.precision_undefined[k] = true;
    else
      r.precision[k] = static_cast<double>(tp) / static_cast<double>(colsum);
    if (rowsum == 0)
      r.recall_undefined[k] = true;
    else
      r.recall[k] = static_cast<double>(tp) / static_cast<double>(rowsum);
    const double pr = r.precision[k] + r.recall[k];
    if (pr <= 0.0)
      r.f1_undefined[k] = true;
    else
      r.f1[k] = 2.0 * r.precision[k] * r.recall[k] / pr;
  }
  return r;
}

std::string format_metrics_table(const MetricsReport& report,
                                 const std::vector<std::string>& class_names,
                                 const std::string& model_name) {
  std::ostringstream out;
  out << std::fixed;
  // Metric columns widen to fit the longest "F1:<class>" header.
  std::size_t width = 8;
  for (const std::string& c : class_names) width = std::max(width, c.size() + 4);
  const int w = static_cast<int>(width);
  auto row = [&](const MetricsReport& r, const std::string& name) {
    out << std::setw(28) << std::left << name << std::right << std::setw(w)
        << std::setprecision(3) << r.accuracy * 100.0;
    out << std::setprecision(3);
    for (double v : r.precision) out << std::setw(w) << v;
    for (double v : r.recall) out << std::setw(w) << v;
    for (double v : r.f1) out << std::setw(w) << v;
    out << "\n";
  };
  out << std::setw(28) << std::left << "Model" << std::right << std::setw(w) << "A,%";
  for (const char* metric : {"P", "R", "F1"})
    for (const std::string& c : class_names) out << std::setw(w) << (std::string(metric) + ":" + c);
  out << "\n";
  if (!report.per_fold.empty()) {
    for (std::size_t f = 0; f < report.per_fold.size(); ++f)
      row(report.per_fold[f], model_name + " fold " + std::to_string(f + 1));
    row(report, model_name + " mean");
  } else {
    row(report, model_name);
  }
  return out.str();
}

}  // namespace lognnet
