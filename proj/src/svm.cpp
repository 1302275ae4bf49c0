#include "revkit/svm.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "revkit/prng.hpp"

namespace revkit {

double LinearClassifier::decision(const std::vector<double>& x) const {
  if (x.size() != weights.size()) {
    throw std::invalid_argument("classifier: feature dimension mismatch");
  }
  double acc = bias;
  for (size_t i = 0; i < x.size(); ++i) {
    acc += weights[i] * (x[i] - mean[i]) / stddev[i];
  }
  return acc;
}

LinearClassifier train_svm(const std::vector<std::vector<double>>& vectors,
                           const std::vector<int>& labels, const SvmConfig& config) {
  if (vectors.size() != labels.size() || vectors.empty()) {
    throw std::invalid_argument("train_svm: empty or mismatched training set");
  }
  const size_t dim = vectors[0].size();
  bool has_pos = false, has_neg = false;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (vectors[i].size() != dim) throw std::invalid_argument("train_svm: ragged feature matrix");
    if (labels[i] == 1) has_pos = true;
    else if (labels[i] == -1) has_neg = true;
    else throw std::invalid_argument("train_svm: labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("train_svm: need at least one example of each class");
  }

  LinearClassifier clf;
  clf.weights.assign(dim, 0.0);
  clf.mean.assign(dim, 0.0);
  clf.stddev.assign(dim, 1.0);

  const double n = static_cast<double>(vectors.size());
  for (const auto& x : vectors) {
    for (size_t j = 0; j < dim; ++j) clf.mean[j] += x[j];
  }
  for (size_t j = 0; j < dim; ++j) clf.mean[j] /= n;
  std::vector<double> var(dim, 0.0);
  for (const auto& x : vectors) {
    for (size_t j = 0; j < dim; ++j) {
      const double d = x[j] - clf.mean[j];
      var[j] += d * d;
    }
  }
  for (size_t j = 0; j < dim; ++j) {
    const double sd = std::sqrt(var[j] / n);
    clf.stddev[j] = sd > 1e-12 ? sd : 1.0;
  }

  std::vector<std::vector<double>> z(vectors.size(), std::vector<double>(dim));
  for (size_t i = 0; i < vectors.size(); ++i) {
    for (size_t j = 0; j < dim; ++j) z[i][j] = (vectors[i][j] - clf.mean[j]) / clf.stddev[j];
  }

  Rng rng(config.seed);
  std::vector<size_t> order(vectors.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  // 1/t decay over epochs.
  int64_t step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    for (const size_t i : order) {
      ++step;
      const double lr = config.lr / (1.0 + static_cast<double>(step) / n);
      const double y = static_cast<double>(labels[i]);
      const double margin = y * (std::inner_product(z[i].begin(), z[i].end(),
                                                    clf.weights.begin(), 0.0) +
                                 clf.bias);
      for (size_t j = 0; j < dim; ++j) {
        double grad = 2.0 * config.lambda * clf.weights[j];
        if (margin < 1.0) grad -= y * z[i][j];
        clf.weights[j] -= lr * grad;
      }
      if (margin < 1.0) clf.bias += lr * y;
    }
  }
  return clf;
}

EvalReport cross_validate(const std::vector<std::vector<double>>& vectors,
                          const std::vector<int>& labels, int k, uint64_t seed,
                          const SvmConfig& config) {
  if (k < 2) throw std::invalid_argument("cross_validate: k must be >= 2");
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == 1 ? pos : neg).push_back(i);
  }
  if (static_cast<size_t>(k) > pos.size() || static_cast<size_t>(k) > neg.size()) {
    throw std::invalid_argument("cross_validate: k exceeds the smaller class count");
  }

  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);

  // Stratified folds, round-robin assignment after the seeded shuffle.
  std::vector<int> fold_of(labels.size());
  for (size_t i = 0; i < pos.size(); ++i) fold_of[pos[i]] = static_cast<int>(i % k);
  for (size_t i = 0; i < neg.size(); ++i) fold_of[neg[i]] = static_cast<int>(i % k);

  EvalReport mean;
  double precision_sum = 0.0, recall_sum = 0.0, f_sum = 0.0;
  for (int fold = 0; fold < k; ++fold) {
    std::vector<std::vector<double>> train_x, test_x;
    std::vector<int> train_y, test_y;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (fold_of[i] == fold) {
        test_x.push_back(vectors[i]);
        test_y.push_back(labels[i]);
      } else {
        train_x.push_back(vectors[i]);
        train_y.push_back(labels[i]);
      }
    }
    SvmConfig fold_config = config;
    fold_config.seed = seed + static_cast<uint64_t>(fold) + 1;
    const LinearClassifier clf = train_svm(train_x, train_y, fold_config);

    int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (size_t i = 0; i < test_x.size(); ++i) {
      const bool called_fake = clf.predicts_fake(test_x[i]);
      const bool actually_fake = test_y[i] == 1;
      if (actually_fake && called_fake) ++tp;
      else if (!actually_fake && called_fake) ++fp;
      else if (actually_fake && !called_fake) ++fn;
      else ++tn;
    }
    const EvalReport r = make_report(tp, fp, tn, fn);
    precision_sum += r.precision;
    recall_sum += r.recall;
    f_sum += r.f_score;
    mean.tp += tp;
    mean.fp += fp;
    mean.tn += tn;
    mean.fn += fn;
  }
  mean.precision = precision_sum / k;
  mean.recall = recall_sum / k;
  mean.f_score = f_sum / k;
  return mean;
}

void save_classifier(const LinearClassifier& clf, const std::string& path) {
  nlohmann::json j = {
      {"weights", clf.weights},
      {"bias", clf.bias},
      {"mean", clf.mean},
      {"stddev", clf.stddev},
  };
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write classifier: " + path);
  out << j.dump(2) << '\n';
}

LinearClassifier load_classifier(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open classifier: " + path);
  nlohmann::json j;
  in >> j;
  LinearClassifier clf;
  clf.weights = j.at("weights").get<std::vector<double>>();
  clf.bias = j.at("bias").get<double>();
  clf.mean = j.at("mean").get<std::vector<double>>();
  clf.stddev = j.at("stddev").get<std::vector<double>>();
  if (clf.mean.size() != clf.weights.size() || clf.stddev.size() != clf.weights.size()) {
    throw std::runtime_error(path + ": inconsistent classifier dimensions");
  }
  return clf;
}

}  // namespace revkit
