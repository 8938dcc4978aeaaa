#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lognnet {

// Rows = true class, columns = predicted class.
struct ConfusionMatrix {
  explicit ConfusionMatrix(std::size_t classes = 0)
      : counts(classes, std::vector<std::size_t>(classes, 0)) {}

  std::size_t classes() const { return counts.size(); }
  std::size_t& at(std::size_t truth, std::size_t predicted) {
    return counts[truth][predicted];
  }
  std::size_t at(std::size_t truth, std::size_t predicted) const {
    return counts[truth][predicted];
  }
  std::size_t total() const;

  std::vector<std::vector<std::size_t>> counts;
};

// Zero-denominator precision/recall are reported as 0 with the matching
// undefined flag set, so the report shape never varies.
struct MetricsReport {
  double accuracy = 0.0;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  std::vector<bool> precision_undefined;
  std::vector<bool> recall_undefined;
  std::vector<bool> f1_undefined;
  ConfusionMatrix confusion{0};

  // Filled by the K-fold protocol: per-fold reports, in fold order.
  std::vector<MetricsReport> per_fold;

  std::size_t fold_count() const { return per_fold.size(); }
};

// A = trace/total; precision_k = cm[k,k]/colsum_k; recall_k = cm[k,k]/rowsum_k;
// F1_k = 2PR/(P+R). Throws std::invalid_argument when total == 0.
MetricsReport metrics(const ConfusionMatrix& cm);

// One report as a text table: model name, A%, per-class P/R/F1,
// plus per-fold rows and their mean when fold data is present.
std::string format_metrics_table(const MetricsReport& report,
                                 const std::vector<std::string>& class_names,
                                 const std::string& model_name);

}  // namespace lognnet
