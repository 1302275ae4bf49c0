#include "revkit/defense.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace revkit {

DetectorModel train_detector(const Corpus& fake, const Corpus& real, const TrainConfig& config) {
  if (fake.empty()) throw std::invalid_argument("train_detector: empty fake corpus");
  if (real.empty()) throw std::invalid_argument("train_detector: empty real corpus");

  const Vocabulary vocab = build_union_vocabulary(fake, real);
  DetectorModel detector;
  detector.rnn_f = train(fake, config, vocab);
  TrainConfig real_config = config;
  real_config.seed = config.seed + 1;
  detector.rnn_l = train(real, real_config, vocab);
  return detector;
}

DetectionResult score(const DetectorModel& detector, const std::string& review) {
  const std::string text = preprocess(review);
  if (text.size() < 2) {
    throw std::invalid_argument("score: review shorter than 2 characters after preprocessing");
  }
  const std::vector<double> log_f = char_log_probs(detector.rnn_f, text);
  const std::vector<double> log_l = char_log_probs(detector.rnn_l, text);

  DetectionResult result;
  result.per_char_ratios.resize(log_f.size());
  double total = 0.0;
  for (size_t i = 0; i < log_f.size(); ++i) {
    result.per_char_ratios[i] = log_f[i] - log_l[i];
    total += result.per_char_ratios[i];
  }
  result.chars_scored = static_cast<int>(log_f.size());
  result.mean_ratio = total / static_cast<double>(log_f.size());
  result.verdict = result.mean_ratio > 0.0 ? Verdict::kFake : Verdict::kReal;
  return result;
}

EvalReport evaluate(const DetectorModel& detector, const Corpus& labeled) {
  for (const auto& r : labeled.reviews) {
    if (r.label == Label::kUnknown) {
      throw std::invalid_argument("evaluate: unlabeled review present");
    }
  }

  const int64_t n = static_cast<int64_t>(labeled.size());
  // -1 skipped, 0 predicted real, 1 predicted fake
  std::vector<int> predicted(labeled.size(), -1);
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < n; ++i) {
    const auto& review = labeled.reviews[static_cast<size_t>(i)];
    const std::string text = preprocess(review.text);
    if (static_cast<int>(text.size()) < detector.min_length || text.size() < 2) continue;
    predicted[static_cast<size_t>(i)] =
        score(detector, text).verdict == Verdict::kFake ? 1 : 0;
  }

  int64_t tp = 0, fp = 0, tn = 0, fn = 0, skipped = 0;
  for (size_t i = 0; i < labeled.size(); ++i) {
    if (predicted[i] < 0) {
      ++skipped;
      continue;
    }
    const bool actually_fake = labeled.reviews[i].label != Label::kReal;
    const bool called_fake = predicted[i] == 1;
    if (actually_fake && called_fake) ++tp;
    else if (!actually_fake && called_fake) ++fp;
    else if (actually_fake && !called_fake) ++fn;
    else ++tn;
  }
  return make_report(tp, fp, tn, fn, skipped);
}

DetectorModel apply_min_length(DetectorModel detector, int min_length) {
  if (min_length < 0) throw std::invalid_argument("apply_min_length: negative length");
  detector.min_length = min_length;
  return detector;
}

std::string save_detector(const DetectorModel& detector, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  const std::string f_path = (base / "rnn_f.rvlm").string();
  const std::string l_path = (base / "rnn_l.rvlm").string();
  save(detector.rnn_f, f_path);
  save(detector.rnn_l, l_path);

  nlohmann::json manifest = {
      {"rnn_f", "rnn_f.rvlm"},
      {"rnn_l", "rnn_l.rvlm"},
      {"min_length", detector.min_length},
      {"provenance",
       {{"fake_seed", detector.rnn_f.config.seed},
        {"real_seed", detector.rnn_l.config.seed},
        {"hidden", detector.rnn_f.config.hidden},
        {"layers", detector.rnn_f.config.layers}}},
  };
  const std::string manifest_path = (base / "detector.json").string();
  std::ofstream out(manifest_path);
  if (!out) throw std::runtime_error("cannot write detector manifest: " + manifest_path);
  out << manifest.dump(2) << '\n';
  return manifest_path;
}

DetectorModel load_detector(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open detector manifest: " + manifest_path);
  nlohmann::json manifest;
  in >> manifest;

  const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
  DetectorModel detector;
  detector.rnn_f = load((base / manifest.at("rnn_f").get<std::string>()).string());
  detector.rnn_l = load((base / manifest.at("rnn_l").get<std::string>()).string());
  detector.min_length = manifest.at("min_length").get<int>();
  return detector;
}

}  // namespace revkit
