#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace revkit {

struct Vocabulary;

enum class Label { kReal, kFake, kGenerated, kUnknown };

const char* label_name(Label label);
Label parse_label(const std::string& name);

struct Review {
  std::string text;
  int stars = 5;
  std::string business_id;
  Label label = Label::kUnknown;
  std::optional<int64_t> usefulness;
};

// Reviews in on-disk order; deterministic splits depend on that order.
struct Corpus {
  std::vector<Review> reviews;
  std::string source;

  size_t size() const { return reviews.size(); }
  bool empty() const { return reviews.empty(); }
};

enum class CorpusFormat { kJsonl };

// One JSON object per line with at least "text"; optional "stars",
// "business_id", "label", "useful". Malformed lines are reported with
// their line number.
Corpus load_reviews(const std::string& path, CorpusFormat format = CorpusFormat::kJsonl);
void save_reviews(const Corpus& corpus, const std::string& path);

// Drops non-ASCII bytes, collapses whitespace runs to single spaces and
// trims. Idempotent.
std::string preprocess(const std::string& text);
Corpus preprocess_corpus(Corpus corpus);

// Concatenation over reviews of [SOR, char ids..., EOR].
std::vector<int> to_training_stream(const Corpus& corpus, const Vocabulary& vocab);

// Seeded shuffle-and-cut. Returns (kept, holdout) with
// |holdout| = round(fraction * n); each part keeps the original order.
std::pair<Corpus, Corpus> split(const Corpus& corpus, double holdout_fraction, uint64_t seed);

}  // namespace revkit
