#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "revkit/corpus.hpp"

namespace revkit {

// Winnowing fingerprints over k-grams of normalized text (lowercased,
// non-alphanumeric stripped). A window of w consecutive k-gram hashes
// selects its minimum, ties broken by rightmost position, so any two
// texts sharing a normalized substring of length >= w + k - 1 share a
// fingerprint.
struct WinnowConfig {
  int k = 5;
  int w = 4;
  uint64_t hash_base = 257;
  uint64_t hash_modulus = (1ULL << 61) - 1;

  int guarantee_threshold() const { return w + k - 1; }
  void validate() const;
  bool operator==(const WinnowConfig&) const = default;
};

struct FingerprintSet {
  std::vector<uint64_t> hashes;  // sorted, unique
  size_t source_kgrams = 0;

  bool empty() const { return hashes.empty(); }
  size_t size() const { return hashes.size(); }
};

std::string winnow_normalize(const std::string& text);

// Polynomial hash of a whole string under the config's base/modulus;
// k-gram hashing rolls this incrementally.
uint64_t poly_hash(const std::string& s, const WinnowConfig& config);

FingerprintSet fingerprint(const std::string& text, const WinnowConfig& config);

// |a n b| / |a u b|; two empty sets count as identical (1.0).
double jaccard(const FingerprintSet& a, const FingerprintSet& b);

struct PlagiarismIndex {
  WinnowConfig config;
  std::vector<std::pair<std::string, FingerprintSet>> entries;  // (review id, fingerprints)

  bool empty() const { return entries.empty(); }
  size_t size() const { return entries.size(); }
  void add(const std::string& id, const std::string& text);
};

PlagiarismIndex build_index(const Corpus& corpus, const WinnowConfig& config);

struct MatchResult {
  double score = 0.0;
  std::string best_id;
};

// Max Jaccard similarity against the index; an entry whose id equals
// exclude_id is skipped so a review never matches itself.
MatchResult max_similarity(const std::string& review, const PlagiarismIndex& index,
                           const std::string& exclude_id = "");

struct QuantileReport {
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
};

// Nearest-rank quantiles of per-review max-similarity scores.
QuantileReport score_distribution(const Corpus& reviews, const PlagiarismIndex& index);
std::vector<double> max_similarity_scores(const Corpus& reviews, const PlagiarismIndex& index);

// Binary index format (magic "RVPI"); layout in the README.
void save_index(const PlagiarismIndex& index, const std::string& path);
PlagiarismIndex load_index(const std::string& path);

}  // namespace revkit
