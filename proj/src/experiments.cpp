#include "revkit/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace revkit {

Corpus generate_corpus(const LanguageModel& model, double temperature, int count,
                       uint64_t seed, int max_len, int min_len, Label label) {
  Corpus corpus;
  corpus.source = "generated@T=" + std::to_string(temperature);
  corpus.reviews.reserve(count);
  uint64_t draw = 0;
  const uint64_t max_draws = static_cast<uint64_t>(count) * 50 + 1000;
  while (static_cast<int>(corpus.size()) < count) {
    if (draw >= max_draws) {
      throw std::runtime_error(
          "generate_corpus: model keeps producing reviews shorter than " +
          std::to_string(min_len) + " characters");
    }
    const std::string text = sample(model, temperature, max_len, seed + draw);
    ++draw;
    if (static_cast<int>(text.size()) < min_len) continue;
    Review r;
    r.text = preprocess(text);
    r.label = label;
    corpus.reviews.push_back(std::move(r));
  }
  return corpus;
}

double CrossTemperatureResult::mean_where(bool train_at_least_test) const {
  double sum = 0.0;
  int cells = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    for (size_t j = 0; j < grid.size(); ++j) {
      if ((grid[i] >= grid[j]) == train_at_least_test) {
        sum += f_matrix[i][j];
        ++cells;
      }
    }
  }
  return cells > 0 ? sum / cells : 0.0;
}

namespace {

struct BenchmarkSplit {
  Corpus attacker_train;
  Corpus defense_real;
  Corpus test_real;
};

BenchmarkSplit carve(const Corpus& real_corpus, int attacker_count, int defense_count,
                     int test_count, uint64_t seed) {
  const int need = attacker_count + defense_count + test_count;
  if (static_cast<int>(real_corpus.size()) < need) {
    throw std::invalid_argument("experiment needs at least " + std::to_string(need) +
                                " real reviews, got " + std::to_string(real_corpus.size()));
  }
  // Deterministic disjoint carve: shuffle once, then slice.
  const auto [rest1, att] = split(
      real_corpus, static_cast<double>(attacker_count) / real_corpus.size(), seed);
  const auto [rest2, def] =
      split(rest1, static_cast<double>(defense_count) / rest1.size(), seed + 1);
  const auto [unused, test] =
      split(rest2, static_cast<double>(test_count) / rest2.size(), seed + 2);
  (void)unused;
  BenchmarkSplit out;
  out.attacker_train = att;
  out.defense_real = def;
  out.test_real = test;
  for (auto& r : out.test_real.reviews) r.label = Label::kReal;
  return out;
}

Corpus balanced_test_set(const Corpus& fakes, const Corpus& reals) {
  Corpus combined;
  combined.source = "balanced-test";
  combined.reviews = fakes.reviews;
  combined.reviews.insert(combined.reviews.end(), reals.reviews.begin(), reals.reviews.end());
  return combined;
}

}  // namespace

CrossTemperatureResult cross_temperature_matrix(const Corpus& real_corpus,
                                                const CrossTemperatureConfig& config) {
  if (config.grid.empty()) throw std::invalid_argument("cross-temperature grid is empty");
  const BenchmarkSplit parts = carve(real_corpus, config.attacker_count, config.defense_count,
                                     config.test_count, config.seed);

  TrainConfig attacker_config = config.attacker;
  attacker_config.seed = config.seed + 11;
  const LanguageModel attacker = train(parts.attacker_train, attacker_config);

  // Sampled characters come from the attacker's vocabulary, which the
  // real corpus defines, so one union vocabulary covers every detector.
  const Vocabulary vocab = build_union_vocabulary(parts.attacker_train, parts.defense_real);

  TrainConfig real_config = config.detector;
  real_config.seed = config.seed + 13;
  const LanguageModel rnn_l = train(parts.defense_real, real_config, vocab);

  const size_t n = config.grid.size();
  std::vector<Corpus> test_fakes(n);
  std::vector<LanguageModel> fake_models;
  fake_models.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const double t = config.grid[i];
    const Corpus train_fakes =
        generate_corpus(attacker, t, config.defense_count, config.seed + 1000 + i * 2,
                        config.sample_max_len, config.sample_min_len);
    test_fakes[i] =
        generate_corpus(attacker, t, config.test_count, config.seed + 1001 + i * 2,
                        config.sample_max_len, config.sample_min_len);
    TrainConfig fake_config = config.detector;
    fake_config.seed = config.seed + 17 + i;
    fake_models.push_back(train(train_fakes, fake_config, vocab));
  }

  CrossTemperatureResult result;
  result.grid = config.grid;
  result.f_matrix.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    DetectorModel detector;
    detector.rnn_f = fake_models[i];
    detector.rnn_l = rnn_l;
    for (size_t j = 0; j < n; ++j) {
      const EvalReport report =
          evaluate(detector, balanced_test_set(test_fakes[j], parts.test_real));
      result.f_matrix[i][j] = report.f_score;
    }
  }
  return result;
}

void write_matrix_csv(const CrossTemperatureResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix CSV: " + path);
  out << "t_train";
  char buf[64];
  for (const double t : result.grid) {
    std::snprintf(buf, sizeof buf, ",f_at_t_test_%.2f", t);
    out << buf;
  }
  out << '\n';
  for (size_t i = 0; i < result.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.2f", result.grid[i]);
    out << buf;
    for (const double f : result.f_matrix[i]) {
      std::snprintf(buf, sizeof buf, ",%.6f", f);
      out << buf;
    }
    out << '\n';
  }
}

std::vector<ModelSizeRow> model_size_tradeoff(const Corpus& real_corpus,
                                              const ModelSizeConfig& config) {
  if (config.hidden_ladder.empty()) throw std::invalid_argument("model-size ladder is empty");
  const BenchmarkSplit parts = carve(real_corpus, config.attacker_count, config.defense_count,
                                     config.test_count, config.seed);
  const Vocabulary vocab = build_union_vocabulary(parts.attacker_train, parts.defense_real);

  TrainConfig real_config = config.detector;
  real_config.seed = config.seed + 13;
  const LanguageModel rnn_l = train(parts.defense_real, real_config, vocab);

  std::vector<ModelSizeRow> rows;
  for (size_t step = 0; step < config.hidden_ladder.size(); ++step) {
    TrainConfig attacker_config = config.attacker;
    attacker_config.hidden = config.hidden_ladder[step];
    attacker_config.seed = config.seed + 11 + step;

    const auto begin = std::chrono::steady_clock::now();
    const LanguageModel attacker = train(parts.attacker_train, attacker_config);
    const auto end = std::chrono::steady_clock::now();

    const Corpus train_fakes =
        generate_corpus(attacker, config.temperature, config.defense_count,
                        config.seed + 2000 + step * 2, config.sample_max_len,
                        config.sample_min_len);
    const Corpus test_fakes =
        generate_corpus(attacker, config.temperature, config.test_count,
                        config.seed + 2001 + step * 2, config.sample_max_len,
                        config.sample_min_len);

    TrainConfig fake_config = config.detector;
    fake_config.seed = config.seed + 17 + step;
    DetectorModel detector;
    detector.rnn_f = train(train_fakes, fake_config, vocab);
    detector.rnn_l = rnn_l;

    ModelSizeRow row;
    row.hidden = config.hidden_ladder[step];
    row.train_seconds = std::chrono::duration<double>(end - begin).count();
    row.f_score = evaluate(detector, balanced_test_set(test_fakes, parts.test_real)).f_score;
    rows.push_back(row);
  }
  return rows;
}

void write_tradeoff_csv(const std::vector<ModelSizeRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write tradeoff CSV: " + path);
  out << "hidden,train_seconds,f_score\n";
  char buf[96];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.3f,%.6f\n", row.hidden, row.train_seconds, row.f_score);
    out << buf;
  }
}

}  // namespace revkit
