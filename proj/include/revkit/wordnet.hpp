#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace revkit {

// Raised when a similarity query names a word outside the lemma index;
// distinguished from a legitimate zero similarity.
struct UnknownWordError : std::runtime_error {
  explicit UnknownWordError(const std::string& word)
      : std::runtime_error("unknown word: \"" + word + "\""), word(word) {}
  std::string word;
};

struct Synset {
  int64_t offset = 0;                 // id from the database file
  std::vector<std::string> lemmas;    // lowercase
  std::vector<int> hypernyms;         // indices into SynsetGraph::synsets
};

struct SynsetGraph {
  std::vector<Synset> synsets;
  std::unordered_map<int64_t, int> by_offset;
  std::unordered_map<std::string, std::vector<int>> lemma_index;  // lemma -> synset indices
  // Undirected hypernym edges plus one virtual root (index = synsets.size())
  // joining all top-level synsets; filled by finalize().
  std::vector<std::vector<int>> adjacency;

  bool has_lemma(const std::string& lemma) const {
    return lemma_index.find(lemma) != lemma_index.end();
  }
  void finalize();
};

// Reads the WordNet 3.x noun database (`index.noun` + `data.noun`),
// following `@` and `@i` hypernym pointers. License-header lines (leading
// spaces) are skipped. Dangling pointers and hypernym cycles are errors.
SynsetGraph parse_wordnet(const std::string& index_path, const std::string& data_path);

// Lexical similarity plus the noun test the customization step needs.
class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;

  // Symmetric, in [0,1], 1 iff the words share a synset. Throws
  // UnknownWordError.
  virtual double similarity(const std::string& a, const std::string& b) const = 0;

  // Lemma under which the token counts as a noun (lowercased, plural
  // stripped), or "" when it is not a noun.
  virtual std::string noun_lemma(const std::string& token) const = 0;

  bool is_noun(const std::string& token) const { return !noun_lemma(token).empty(); }
};

// 1/(1 + d) where d is the shortest path between the words' closest
// synsets through the hypernym hierarchy, undirected, with a virtual root
// joining all top-level synsets.
double path_similarity(const SynsetGraph& graph, const std::string& word_a,
                       const std::string& word_b);

bool is_noun(const SynsetGraph& graph, const std::string& token);
std::string noun_lemma(const SynsetGraph& graph, const std::string& token);

class WordnetSimilarity : public SimilarityProvider {
 public:
  explicit WordnetSimilarity(SynsetGraph graph) : graph_(std::move(graph)) {}

  double similarity(const std::string& a, const std::string& b) const override {
    return path_similarity(graph_, a, b);
  }
  std::string noun_lemma(const std::string& token) const override {
    return revkit::noun_lemma(graph_, token);
  }

  const SynsetGraph& graph() const { return graph_; }

 private:
  SynsetGraph graph_;
};

}  // namespace revkit
