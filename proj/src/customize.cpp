#include "revkit/customize.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

#include "revkit/lstm.hpp"
#include "revkit/prng.hpp"

namespace revkit {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\'';
}

// A token splits into (prefix punctuation)(core)(suffix punctuation).
struct TokenParts {
  std::string prefix, core, suffix;
};

TokenParts split_token(const std::string& token) {
  size_t begin = 0;
  while (begin < token.size() && !is_word_char(token[begin])) ++begin;
  size_t end = token.size();
  while (end > begin && !is_word_char(token[end - 1])) --end;
  return {token.substr(0, begin), token.substr(begin, end - begin), token.substr(end)};
}

std::string resolve_keyword(const std::string& keyword, const SimilarityProvider& provider) {
  const std::string lemma = provider.noun_lemma(keyword);
  if (lemma.empty()) throw UnknownWordError(keyword);
  return lemma;
}

}  // namespace

ReplacementPool build_replacement_pool(const Corpus& reference, const std::string& keyword,
                                       const SimilarityProvider& provider, double min_sim) {
  const std::string kw = resolve_keyword(keyword, provider);

  std::map<std::string, double> found;  // ordered -> lexicographic entries
  for (const auto& review : reference.reviews) {
    std::istringstream ss(review.text);
    std::string token;
    while (ss >> token) {
      const std::string lemma = provider.noun_lemma(split_token(token).core);
      if (lemma.empty() || found.count(lemma)) continue;
      const double sim = provider.similarity(lemma, kw);
      if (sim > min_sim) found[lemma] = sim;
    }
  }

  ReplacementPool pool;
  pool.source = reference.source;
  pool.entries.reserve(found.size());
  for (const auto& [noun, sim] : found) pool.entries.push_back({noun, sim});
  return pool;
}

std::string customize(const std::string& review, const ReplacementPool& pool,
                      const SimilarityProvider& provider, const CustomizeConfig& config) {
  if (pool.empty()) return review;
  const std::string kw = resolve_keyword(config.keyword, provider);

  Rng rng(config.seed);
  // A review often repeats a noun; the pool-similarity row is cached.
  std::unordered_map<std::string, std::vector<double>> sim_rows;

  std::istringstream ss(review);
  std::string token;
  std::string out;
  bool first = true;
  while (ss >> token) {
    if (!first) out.push_back(' ');
    first = false;

    const TokenParts parts = split_token(token);
    const std::string lemma = provider.noun_lemma(parts.core);
    if (lemma.empty() || provider.similarity(lemma, kw) <= config.min_sim) {
      out += token;
      continue;
    }

    auto row = sim_rows.find(lemma);
    if (row == sim_rows.end()) {
      std::vector<double> sims(pool.size());
      for (size_t i = 0; i < pool.size(); ++i) {
        sims[i] = provider.similarity(lemma, pool.entries[i].noun);
      }
      row = sim_rows.emplace(lemma, std::move(sims)).first;
    }
    const std::vector<double> probs =
        softmax_with_temperature(row->second, config.sampling_temperature);
    const int pick = inverse_cdf_draw(probs, rng.next_double());

    std::string replacement = pool.entries[pick].noun;
    if (!parts.core.empty() && std::isupper(static_cast<unsigned char>(parts.core[0])) &&
        !replacement.empty()) {
      replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
    }
    out += parts.prefix;
    out += replacement;
    out += parts.suffix;
  }
  return out;
}

double customization_rate(const Corpus& reviews, const ReplacementPool& pool,
                          const SimilarityProvider& provider, const CustomizeConfig& config) {
  if (reviews.empty()) return 0.0;
  std::vector<char> changed(reviews.size(), 0);
  const int64_t n = static_cast<int64_t>(reviews.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < n; ++i) {
    CustomizeConfig per_review = config;
    per_review.seed = config.seed ^ static_cast<uint64_t>(i);
    const std::string result =
        customize(reviews.reviews[static_cast<size_t>(i)].text, pool, provider, per_review);
    changed[static_cast<size_t>(i)] = result != reviews.reviews[static_cast<size_t>(i)].text;
  }
  double count = 0;
  for (const char c : changed) count += c;
  return count / static_cast<double>(reviews.size());
}

}  // namespace revkit
