#pragma once

#include <string>
#include <vector>

#include "revkit/corpus.hpp"
#include "revkit/langmodel.hpp"
#include "revkit/metrics.hpp"

namespace revkit {

enum class Verdict { kFake, kReal };

// Dual language models: rnn_f trained on known machine-generated reviews,
// rnn_l on real ones. A test review is scored by the mean negative
// log-likelihood ratio of its character stream; positive means the
// fake-side model explains it better.
struct DetectorModel {
  LanguageModel rnn_f;
  LanguageModel rnn_l;
  int min_length = 0;  // characters; 0 disables the policy
};

struct DetectionResult {
  double mean_ratio = 0.0;              // L-bar
  Verdict verdict = Verdict::kReal;     // FAKE iff mean_ratio > 0 (strict)
  std::vector<double> per_char_ratios;  // one per scored transition
  int chars_scored = 0;
};

// Trains both models on the union alphabet of the two corpora so either
// can score any test review. rnn_l uses config.seed + 1 so the two models
// differ by seed only.
DetectorModel train_detector(const Corpus& fake, const Corpus& real, const TrainConfig& config);

// Preprocesses the review, then scores each character transition as
// log P_F - log P_L. Requires >= 2 characters after preprocessing.
DetectionResult score(const DetectorModel& detector, const std::string& review);

// Confusion matrix over a labeled corpus with FAKE/GENERATED positive;
// reviews shorter than min_length are skipped and counted.
EvalReport evaluate(const DetectorModel& detector, const Corpus& labeled);

DetectorModel apply_min_length(DetectorModel detector, int min_length);

// Two model files plus a JSON manifest in `dir`; returns the manifest path.
std::string save_detector(const DetectorModel& detector, const std::string& dir);
DetectorModel load_detector(const std::string& manifest_path);

}  // namespace revkit
