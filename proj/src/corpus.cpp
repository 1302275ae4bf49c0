#include "revkit/corpus.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "revkit/prng.hpp"
#include "revkit/vocab.hpp"

namespace revkit {

const char* label_name(Label label) {
  switch (label) {
    case Label::kReal: return "real";
    case Label::kFake: return "fake";
    case Label::kGenerated: return "generated";
    case Label::kUnknown: return "unknown";
  }
  return "unknown";
}

Label parse_label(const std::string& name) {
  if (name == "real") return Label::kReal;
  if (name == "fake") return Label::kFake;
  if (name == "generated") return Label::kGenerated;
  if (name == "unknown") return Label::kUnknown;
  throw std::runtime_error("unrecognized label value: \"" + name + "\"");
}

Corpus load_reviews(const std::string& path, CorpusFormat format) {
  if (format != CorpusFormat::kJsonl) {
    throw std::invalid_argument("load_reviews: unsupported corpus format");
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open review file: " + path);

  Corpus corpus;
  corpus.source = path;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed JSON line: " + e.what());
    }
    if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": review object must contain a string \"text\" field");
    }
    Review r;
    r.text = j["text"].get<std::string>();
    if (j.contains("stars")) {
      if (!j["stars"].is_number_integer()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": \"stars\" must be an integer");
      }
      r.stars = j["stars"].get<int>();
      if (r.stars < 1 || r.stars > 5) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": \"stars\" must be in 1..5, got " + std::to_string(r.stars));
      }
    }
    if (j.contains("business_id")) r.business_id = j["business_id"].get<std::string>();
    if (j.contains("label")) {
      try {
        r.label = parse_label(j["label"].get<std::string>());
      } catch (const std::exception& e) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (j.contains("useful")) {
      const int64_t u = j["useful"].get<int64_t>();
      if (u < 0) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": \"useful\" must be non-negative");
      }
      r.usefulness = u;
    }
    corpus.reviews.push_back(std::move(r));
  }
  return corpus;
}

void save_reviews(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write review file: " + path);
  for (const auto& r : corpus.reviews) {
    nlohmann::json j;
    j["text"] = r.text;
    j["stars"] = r.stars;
    if (!r.business_id.empty()) j["business_id"] = r.business_id;
    if (r.label != Label::kUnknown) j["label"] = label_name(r.label);
    if (r.usefulness) j["useful"] = *r.usefulness;
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failure on: " + path);
}

std::string preprocess(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char ch : text) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      pending_space = true;
    } else if (c >= 33 && c <= 126) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(ch);
    }
    // Everything else (control bytes, DEL, bytes above 126) is dropped
    // without breaking or creating a whitespace run.
  }
  return out;
}

Corpus preprocess_corpus(Corpus corpus) {
  for (auto& r : corpus.reviews) r.text = preprocess(r.text);
  return corpus;
}

std::vector<int> to_training_stream(const Corpus& corpus, const Vocabulary& vocab) {
  std::vector<int> stream;
  size_t total = 0;
  for (const auto& r : corpus.reviews) total += r.text.size() + 2;
  stream.reserve(total);
  for (size_t i = 0; i < corpus.reviews.size(); ++i) {
    stream.push_back(vocab.sor_id);
    for (const char c : corpus.reviews[i].text) {
      const int id = vocab.id_of(c);
      if (id < 0) {
        throw std::runtime_error("character '" + std::string(1, c) +
                                 "' in review " + std::to_string(i) +
                                 " is not in the vocabulary");
      }
      stream.push_back(id);
    }
    stream.push_back(vocab.eor_id);
  }
  return stream;
}

std::pair<Corpus, Corpus> split(const Corpus& corpus, double holdout_fraction, uint64_t seed) {
  if (holdout_fraction < 0.0 || holdout_fraction > 1.0) {
    throw std::invalid_argument("split: holdout fraction must be in [0,1]");
  }
  const size_t n = corpus.size();
  const size_t holdout_n = static_cast<size_t>(std::llround(holdout_fraction * static_cast<double>(n)));

  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<bool> held(n, false);
  for (size_t i = 0; i < holdout_n; ++i) held[order[i]] = true;

  Corpus kept, holdout;
  kept.source = corpus.source;
  holdout.source = corpus.source;
  for (size_t i = 0; i < n; ++i) {
    (held[i] ? holdout : kept).reviews.push_back(corpus.reviews[i]);
  }
  return {std::move(kept), std::move(holdout)};
}

}  // namespace revkit
