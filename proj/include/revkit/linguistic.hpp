#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "revkit/wordnet.hpp"

namespace revkit {

// The linguistic feature groups of the fake-review baseline classifier:
// similarity (1), structural (4), syntactic (6), semantic (4) plus one
// percentage per category-lexicon class.

std::vector<std::string> split_sentences(const std::string& text);
std::vector<std::string> tokenize(const std::string& sentence);

// Maximum cosine similarity of unigram count vectors over all sentence
// pairs; 0 with fewer than two sentences.
double similarity_feature(const std::string& text);

// word count, sentence count, avg sentence length (words), avg word
// length (chars).
std::array<double, 4> structural_features(const std::string& text);

// TSV: word<TAB>positivity<TAB>negativity, scores in [0,1], sum <= 1.
struct SentimentLexicon {
  std::unordered_map<std::string, std::pair<double, double>> entries;

  static SentimentLexicon from_file(const std::string& path);
};

// Sectioned text file: "[category]" header, one word per line, trailing
// '*' marks a prefix pattern.
struct CategoryLexicon {
  struct Category {
    std::string name;
    std::unordered_set<std::string> words;
    std::vector<std::string> prefixes;
  };
  std::vector<Category> categories;  // file order fixes the feature order

  static CategoryLexicon from_file(const std::string& path);
};

// Word-list files, one lowercase word per line.
struct PosLexicons {
  std::unordered_set<std::string> verbs;
  std::unordered_set<std::string> adjectives;
  std::unordered_set<std::string> adverbs;

  static PosLexicons from_files(const std::string& verbs_path, const std::string& adjectives_path,
                                const std::string& adverbs_path);
};

// % nouns, % verbs, % adjectives, % adverbs, % first-person pronouns,
// % second-person pronouns, all over the token count.
std::array<double, 6> syntactic_features(const std::string& text,
                                         const SimilarityProvider& provider,
                                         const PosLexicons& pos);

// % subjective, % objective, % positive, % negative words. A token is
// positive when positivity > negativity and positivity > 0 (negative
// symmetric), subjective when positivity + negativity >= the threshold,
// objective when it is lexicon-known but below it.
std::array<double, 4> semantic_features(const std::string& text, const SentimentLexicon& lexicon,
                                        double subjectivity_threshold = 0.5);

std::vector<double> category_features(const std::string& text, const CategoryLexicon& lexicon);

struct FeatureVector {
  std::vector<double> values;  // 15 + N, in feature_names order
};

std::vector<std::string> feature_names(const CategoryLexicon& categories);

FeatureVector extract_features(const std::string& text, const SimilarityProvider& provider,
                               const PosLexicons& pos, const SentimentLexicon& sentiment,
                               const CategoryLexicon& categories,
                               double subjectivity_threshold = 0.5);

}  // namespace revkit
