#include "revkit/langmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "revkit/io_util.hpp"
#include "revkit/prng.hpp"

namespace revkit {

void TrainConfig::validate() const {
  if (hidden <= 0 || layers <= 0 || batch_size <= 0 || bptt_len <= 0 || epochs <= 0) {
    throw std::invalid_argument("train config: sizes must be positive");
  }
  if (!(initial_lr > 0.0)) throw std::invalid_argument("train config: initial_lr must be > 0");
  if (!(decay_factor > 0.0 && decay_factor < 1.0)) {
    throw std::invalid_argument("train config: decay_factor must be in (0,1)");
  }
  if (decay_patience <= 0) throw std::invalid_argument("train config: decay_patience must be > 0");
  if (!(clip_norm > 0.0)) throw std::invalid_argument("train config: clip_norm must be > 0");
}

namespace {

TrainConfig make_preset(int hidden, int layers, int batch, int epochs) {
  TrainConfig c;
  c.hidden = hidden;
  c.layers = layers;
  c.batch_size = batch;
  c.epochs = epochs;
  return c;
}

const std::map<std::string, TrainConfig>& preset_table() {
  static const std::map<std::string, TrainConfig> table = [] {
    std::map<std::string, TrainConfig> t;
    // Full-scale generator configuration.
    t["attack"] = make_preset(1024, 2, 256, 20);
    // Defense-model ladder, keyed by ground-truth sample budget.
    t["defense-2k"] = make_preset(128, 1, 16, 50);
    t["defense-10k"] = make_preset(256, 1, 32, 50);
    t["defense-20k"] = make_preset(512, 1, 56, 30);
    t["defense-100k"] = make_preset(768, 2, 128, 20);
    t["defense-200k"] = make_preset(1024, 2, 128, 20);
    // Attack-model ladder, keyed by hidden-unit count.
    t["attack-128"] = make_preset(128, 1, 32, 50);
    t["attack-256"] = make_preset(256, 1, 56, 50);
    t["attack-512"] = make_preset(512, 1, 128, 30);
    t["attack-768"] = make_preset(768, 2, 256, 20);
    t["attack-1024"] = make_preset(1024, 2, 256, 20);
    t["attack-2048"] = make_preset(2048, 2, 256, 50);
    // Desk-scale configurations for CPU-only experiments.
    t["tiny"] = make_preset(64, 1, 8, 50);
    t["tiny"].bptt_len = 64;
    t["desk"] = make_preset(128, 1, 16, 12);
    t["desk"].bptt_len = 64;
    return t;
  }();
  return table;
}

}  // namespace

TrainConfig preset(const std::string& name) {
  const auto& table = preset_table();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [n, _] : table) {
      if (!known.empty()) known += ", ";
      known += n;
    }
    throw std::invalid_argument("unknown preset \"" + name + "\" (known: " + known + ")");
  }
  return it->second;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [n, _] : preset_table()) names.push_back(n);
  return names;
}

LanguageModel train(const Corpus& corpus, const TrainConfig& config) {
  return train(corpus, config, build_vocabulary(corpus));
}

LanguageModel train(const Corpus& corpus, const TrainConfig& config, const Vocabulary& vocab) {
  config.validate();
  if (corpus.empty()) throw std::invalid_argument("train: empty corpus");

  const std::vector<int> stream = to_training_stream(corpus, vocab);
  const int B = config.batch_size;
  const size_t slice_len = stream.size() / static_cast<size_t>(B);
  const size_t batches_per_epoch =
      slice_len >= 2 ? (slice_len - 1) / static_cast<size_t>(config.bptt_len) : 0;
  if (batches_per_epoch == 0) {
    throw std::invalid_argument(
        "train: stream of " + std::to_string(stream.size()) +
        " tokens is too short for batch_size " + std::to_string(B) + " x bptt_len " +
        std::to_string(config.bptt_len) + "; use a smaller batch");
  }

  LanguageModel model;
  model.vocab = vocab;
  model.config = config;
  const LstmDims dims{config.layers, config.hidden, vocab.size};
  model.params = LstmParams::random_init(dims, config.seed);

  AdamState adam = AdamState::zeros(model.params.size());
  LrDecay decay(config.initial_lr, config.decay_factor, config.decay_patience);

  std::vector<std::vector<int>> inputs(config.bptt_len, std::vector<int>(B));
  std::vector<std::vector<int>> targets(config.bptt_len, std::vector<int>(B));
  int64_t batch_index = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    LstmState state = LstmState::zeros(dims, B);
    for (size_t seg = 0; seg < batches_per_epoch; ++seg) {
      const size_t base = seg * static_cast<size_t>(config.bptt_len);
      for (int t = 0; t < config.bptt_len; ++t) {
        for (int lane = 0; lane < B; ++lane) {
          const size_t pos = static_cast<size_t>(lane) * slice_len + base + t;
          inputs[t][lane] = stream[pos];
          targets[t][lane] = stream[pos + 1];
        }
      }
      const ForwardCache cache = forward_batch(model.params, inputs, state);
      const double loss = cross_entropy(cache, targets);
      Gradients grads = backward(model.params, cache, targets);
      clip_global_norm(grads, config.clip_norm);
      const double lr = decay.observe(loss);
      adam_step(model.params, grads, adam, lr);
      model.training_log.push_back({batch_index++, loss, lr});
    }
  }
  return model;
}

std::string sample(const LanguageModel& model, double temperature, int max_len, uint64_t seed) {
  if (!(temperature > 0.0)) throw std::invalid_argument("sample: temperature must be > 0");
  if (max_len < 0) throw std::invalid_argument("sample: max_len must be >= 0");

  Rng rng(seed);
  LstmState state = LstmState::zeros(model.params.dims, 1);
  std::vector<double> logits;
  std::string out;
  int token = model.vocab.sor_id;
  while (static_cast<int>(out.size()) < max_len) {
    lstm_step(model.params, token, state, logits);
    const std::vector<double> probs = softmax_with_temperature(logits, temperature);
    token = inverse_cdf_draw(probs, rng.next_double());
    if (model.vocab.is_delimiter(token)) break;
    out.push_back(model.vocab.char_of(token));
  }
  return out;
}

std::vector<double> char_log_probs(const LanguageModel& model, const std::string& text) {
  LstmState state = LstmState::zeros(model.params.dims, 1);
  std::vector<double> logits;
  std::vector<double> out;
  out.reserve(text.size());
  int token = model.vocab.sor_id;
  for (const char c : text) {
    const int next = model.vocab.id_of(c);
    if (next < 0) {
      throw std::runtime_error("char_log_probs: character '" + std::string(1, c) +
                               "' is not in the model vocabulary");
    }
    lstm_step(model.params, token, state, logits);
    const double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (const double v : logits) sum += std::exp(v - mx);
    out.push_back(logits[next] - mx - std::log(sum));
    token = next;
  }
  return out;
}

namespace {

constexpr char kModelMagic[5] = "RVLM";
constexpr uint32_t kModelVersion = 1;

nlohmann::json config_to_json(const TrainConfig& c) {
  return {
      {"hidden", c.hidden},
      {"layers", c.layers},
      {"batch_size", c.batch_size},
      {"bptt_len", c.bptt_len},
      {"epochs", c.epochs},
      {"initial_lr", c.initial_lr},
      {"decay_factor", c.decay_factor},
      {"decay_patience", c.decay_patience},
      {"clip_norm", c.clip_norm},
      {"seed", c.seed},
      {"precision", c.precision == Precision::kF32 ? "f32" : "f64"},
  };
}

TrainConfig config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.hidden = j.at("hidden").get<int>();
  c.layers = j.at("layers").get<int>();
  c.batch_size = j.at("batch_size").get<int>();
  c.bptt_len = j.at("bptt_len").get<int>();
  c.epochs = j.at("epochs").get<int>();
  c.initial_lr = j.at("initial_lr").get<double>();
  c.decay_factor = j.at("decay_factor").get<double>();
  c.decay_patience = j.at("decay_patience").get<int>();
  c.clip_norm = j.at("clip_norm").get<double>();
  c.seed = j.at("seed").get<uint64_t>();
  c.precision = j.at("precision").get<std::string>() == "f32" ? Precision::kF32 : Precision::kF64;
  return c;
}

}  // namespace

void save(const LanguageModel& model, const std::string& path) {
  io::ByteWriter w;
  w.bytes(std::string(kModelMagic, 4));
  w.u32(kModelVersion);

  nlohmann::json meta = {
      {"vocab_chars", model.vocab.chars},
      {"vocab_size", model.vocab.size},
      {"config", config_to_json(model.config)},
  };
  const std::string meta_str = meta.dump();
  w.u64(meta_str.size());
  w.bytes(meta_str);

  if (model.config.precision == Precision::kF32) {
    for (const double v : model.params.flat) w.f32(static_cast<float>(v));
  } else {
    for (const double v : model.params.flat) w.f64(v);
  }
  w.u64(io::fnv1a64(w.data().data(), w.data().size()));
  w.write_file(path);
}

LanguageModel load(const std::string& path) {
  io::ByteReader r = io::ByteReader::from_file(path);
  if (r.size() < 8 + 4 + 4 + 8) throw std::runtime_error(path + ": truncated model file");

  // Trailing checksum covers everything before it.
  {
    io::ByteReader tail(std::vector<char>(r.data().end() - 8, r.data().end()));
    const uint64_t expect = tail.u64();
    const uint64_t actual = io::fnv1a64(r.data().data(), r.size() - 8);
    if (expect != actual) throw std::runtime_error(path + ": checksum mismatch, file corrupted");
  }

  if (r.bytes(4) != std::string(kModelMagic, 4)) {
    throw std::runtime_error(path + ": bad magic, not a model file");
  }
  const uint32_t version = r.u32();
  if (version != kModelVersion) {
    throw std::runtime_error(path + ": unsupported model version " + std::to_string(version) +
                             " (expected " + std::to_string(kModelVersion) + ")");
  }
  const uint64_t meta_len = r.u64();
  const nlohmann::json meta = nlohmann::json::parse(r.bytes(meta_len));

  LanguageModel model;
  model.vocab = Vocabulary::from_chars(meta.at("vocab_chars").get<std::string>());
  if (model.vocab.size != meta.at("vocab_size").get<int>()) {
    throw std::runtime_error(path + ": vocabulary size mismatch in metadata");
  }
  model.config = config_from_json(meta.at("config"));

  const LstmDims dims{model.config.layers, model.config.hidden, model.vocab.size};
  model.params = LstmParams::zeros(dims);
  const size_t n = model.params.size();
  const size_t width = model.config.precision == Precision::kF32 ? 4 : 8;
  if (r.remaining() != n * width + 8) {
    throw std::runtime_error(path + ": weight block size mismatch");
  }
  if (model.config.precision == Precision::kF32) {
    for (size_t i = 0; i < n; ++i) model.params.flat[i] = static_cast<double>(r.f32());
  } else {
    for (size_t i = 0; i < n; ++i) model.params.flat[i] = r.f64();
  }
  return model;
}

void write_training_log_csv(const LanguageModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write training log: " + path);
  out << "batch,loss,lr\n";
  for (const auto& e : model.training_log) {
    out << e.batch << ',' << std::scientific << e.loss << ',' << e.lr << '\n';
  }
  out << std::defaultfloat;
  if (!out) throw std::runtime_error("write failure on: " + path);
}

}  // namespace revkit
