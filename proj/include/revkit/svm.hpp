#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revkit/metrics.hpp"

namespace revkit {

struct SvmConfig {
  double lambda = 1e-4;
  int epochs = 50;
  double lr = 0.01;
  uint64_t seed = 0;
};

// Linear SVM trained by seeded SGD on the primal hinge objective, with
// z-score standardization baked in: classification applies the training
// mean/stddev before the dot product. Constant features get stddev 1 and
// therefore never move their (zero-initialized) weight.
struct LinearClassifier {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> mean;
  std::vector<double> stddev;

  double decision(const std::vector<double>& x) const;
  bool predicts_fake(const std::vector<double>& x) const { return decision(x) > 0.0; }
};

// labels: +1 fake, -1 real. Requires at least one example of each class.
LinearClassifier train_svm(const std::vector<std::vector<double>>& vectors,
                           const std::vector<int>& labels, const SvmConfig& config);

// Stratified k-fold cross validation; per-fold precision/recall/F are
// averaged and confusion counts summed. Requires k <= the smaller class
// count.
EvalReport cross_validate(const std::vector<std::vector<double>>& vectors,
                          const std::vector<int>& labels, int k, uint64_t seed,
                          const SvmConfig& config);

void save_classifier(const LinearClassifier& clf, const std::string& path);
LinearClassifier load_classifier(const std::string& path);

}  // namespace revkit
