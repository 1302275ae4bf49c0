#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revkit/corpus.hpp"
#include "revkit/lstm.hpp"
#include "revkit/vocab.hpp"

namespace revkit {

enum class Precision { kF32, kF64 };

struct TrainConfig {
  int hidden = 128;
  int layers = 1;
  int batch_size = 16;
  int bptt_len = 128;   // characters per truncated-BPTT segment
  int epochs = 10;
  double initial_lr = 2e-3;
  double decay_factor = 0.5;
  int decay_patience = 5;  // consecutive loss increases before the rate halves
  double clip_norm = 5.0;
  uint64_t seed = 0;
  Precision precision = Precision::kF64;

  void validate() const;
};

// Named presets. "attack" is the full-scale generator configuration;
// "defense-2k".."defense-200k" and "attack-128".."attack-2048" are the
// model ladders used by the size/cost studies; "tiny" and "desk" are
// small configurations that train in seconds/minutes on a CPU.
TrainConfig preset(const std::string& name);
std::vector<std::string> preset_names();

struct TrainLogEntry {
  int64_t batch = 0;
  double loss = 0.0;
  double lr = 0.0;
};

// Halve-on-plateau learning rate rule: each batch loss is compared with
// the immediately preceding one; after `patience` consecutive increases
// the rate is multiplied by `factor` and the streak resets.
class LrDecay {
 public:
  LrDecay(double initial_lr, double factor, int patience)
      : lr_(initial_lr), factor_(factor), patience_(patience) {}

  // Feed the freshly computed batch loss; returns the rate to use for
  // this batch's update.
  double observe(double loss) {
    if (has_prev_ && loss > prev_loss_) {
      if (++streak_ >= patience_) {
        lr_ *= factor_;
        streak_ = 0;
      }
    } else {
      streak_ = 0;
    }
    prev_loss_ = loss;
    has_prev_ = true;
    return lr_;
  }

  double lr() const { return lr_; }

 private:
  double lr_;
  double factor_;
  int patience_;
  int streak_ = 0;
  double prev_loss_ = 0.0;
  bool has_prev_ = false;
};

struct LanguageModel {
  Vocabulary vocab;
  LstmParams params;
  TrainConfig config;
  std::vector<TrainLogEntry> training_log;
};

// Truncated BPTT over the delimiter-wrapped stream: the stream is cut
// into batch_size contiguous slices advanced in lockstep, hidden state
// carries across segments within an epoch and resets at epoch
// boundaries. Deterministic for a fixed seed.
LanguageModel train(const Corpus& corpus, const TrainConfig& config);
LanguageModel train(const Corpus& corpus, const TrainConfig& config, const Vocabulary& vocab);

// Seeds with SOR and draws characters at the given temperature until a
// delimiter token or max_len characters. Delimiters never appear in the
// returned text.
std::string sample(const LanguageModel& model, double temperature, int max_len, uint64_t seed);

// Entry t is log P(char_t | SOR, char_1..t-1) at temperature 1; one entry
// per character of `text` (the end-of-review transition is not scored).
std::vector<double> char_log_probs(const LanguageModel& model, const std::string& text);

// Versioned binary format (magic "RVLM"); see the README for the layout.
void save(const LanguageModel& model, const std::string& path);
LanguageModel load(const std::string& path);

void write_training_log_csv(const LanguageModel& model, const std::string& path);

}  // namespace revkit
