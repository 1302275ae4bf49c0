#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revkit/corpus.hpp"
#include "revkit/defense.hpp"

namespace revkit {

// Samples complete reviews from a model, skipping ones shorter than
// min_len characters; draw i uses seed + i (skipped draws consume a
// seed), so runs are reproducible.
Corpus generate_corpus(const LanguageModel& model, double temperature, int count,
                       uint64_t seed, int max_len = 1000, int min_len = 2,
                       Label label = Label::kGenerated);

// Train-at-one-temperature, test-at-another sweep: one attacker model,
// one real-side model, one fake-side model per grid temperature, and an
// F-score for every (T_train, T_test) cell on balanced held-out sets.
struct CrossTemperatureConfig {
  std::vector<double> grid = {0.3, 0.7, 1.0};
  int attacker_count = 300;  // real reviews the attacker trains on
  int defense_count = 300;   // per-side detector training reviews
  int test_count = 100;      // per-side held-out reviews per cell
  TrainConfig attacker;
  TrainConfig detector;
  int sample_max_len = 600;
  int sample_min_len = 30;
  uint64_t seed = 0;
};

struct CrossTemperatureResult {
  std::vector<double> grid;
  std::vector<std::vector<double>> f_matrix;  // [t_train][t_test]

  double mean_where(bool train_at_least_test) const;
};

CrossTemperatureResult cross_temperature_matrix(const Corpus& real_corpus,
                                                const CrossTemperatureConfig& config);

void write_matrix_csv(const CrossTemperatureResult& result, const std::string& path);

// Attacker-model-size sweep: detector F-score against attackers of
// growing hidden size, with the attacker's training wall time.
struct ModelSizeConfig {
  std::vector<int> hidden_ladder = {32, 64, 128};
  int attacker_count = 300;
  int defense_count = 300;
  int test_count = 100;
  TrainConfig attacker;  // hidden is overridden per ladder step
  TrainConfig detector;
  double temperature = 1.0;
  int sample_max_len = 600;
  int sample_min_len = 30;
  uint64_t seed = 0;
};

struct ModelSizeRow {
  int hidden = 0;
  double train_seconds = 0.0;
  double f_score = 0.0;
};

std::vector<ModelSizeRow> model_size_tradeoff(const Corpus& real_corpus,
                                              const ModelSizeConfig& config);

void write_tradeoff_csv(const std::vector<ModelSizeRow>& rows, const std::string& path);

}  // namespace revkit
