#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revkit/corpus.hpp"
#include "revkit/wordnet.hpp"

namespace revkit {

struct CustomizeConfig {
  std::string keyword = "food";
  double min_sim = 0.2;
  double sampling_temperature = 1.0;
  uint64_t seed = 0;
};

// Nouns from a target entity's reference reviews that relate to the
// keyword, each with its similarity to it. Entries are distinct,
// lowercase and lexicographically ordered.
struct ReplacementPool {
  struct Entry {
    std::string noun;
    double sim_to_keyword = 0.0;
  };
  std::vector<Entry> entries;
  std::string source;

  bool empty() const { return entries.empty(); }
  size_t size() const { return entries.size(); }
};

ReplacementPool build_replacement_pool(const Corpus& reference, const std::string& keyword,
                                       const SimilarityProvider& provider, double min_sim);

// Replaces every keyword-related noun by one sampled from the pool via a
// softmax over similarity, preserving first-letter capitalization and
// surrounding punctuation. Word count is preserved; with an empty pool
// the review is returned unchanged.
std::string customize(const std::string& review, const ReplacementPool& pool,
                      const SimilarityProvider& provider, const CustomizeConfig& config);

// Fraction of reviews customize() changed at all; review i is customized
// with seed config.seed ^ i.
double customization_rate(const Corpus& reviews, const ReplacementPool& pool,
                          const SimilarityProvider& provider, const CustomizeConfig& config);

}  // namespace revkit
