#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "revkit/prng.hpp"
#include "revkit/wordnet.hpp"
#include "support/paths.hpp"

using namespace revkit;

namespace {

const SynsetGraph& fixture() {
  static const SynsetGraph graph =
      parse_wordnet(testpaths::wordnet_index(), testpaths::wordnet_data());
  return graph;
}

struct TempPair {
  std::string index_path, data_path;
  TempPair(const std::string& index_contents, const std::string& data_contents) {
    static int counter = 0;
    index_path = "wn_test_index_" + std::to_string(counter) + ".noun";
    data_path = "wn_test_data_" + std::to_string(counter) + ".noun";
    ++counter;
    std::ofstream(index_path) << index_contents;
    std::ofstream(data_path) << data_contents;
  }
  ~TempPair() {
    std::remove(index_path.c_str());
    std::remove(data_path.c_str());
  }
};

// Independent BFS oracle over an explicit edge list mirroring the fixture
// hierarchy around the words probed below.
int oracle_distance(const std::string& a, const std::string& b) {
  static const std::vector<std::pair<std::string, std::string>> edges = {
      {"physical_entity", "entity"}, {"matter", "physical_entity"},
      {"substance", "matter"},       {"food", "substance"},
      {"pizza", "food"},             {"pasta", "food"},
      {"sushi", "food"},             {"noodle", "pasta"},
      {"object", "physical_entity"}, {"living_thing", "object"},
      {"organism", "living_thing"},  {"person", "organism"},
      {"worker", "person"},          {"waiter", "worker"},
  };
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [x, y] : edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::map<std::string, int> dist{{a, 0}};
  std::deque<std::string> queue{a};
  while (!queue.empty()) {
    const std::string node = queue.front();
    queue.pop_front();
    if (node == b) return dist[node];
    for (const auto& next : adj[node]) {
      if (!dist.count(next)) {
        dist[next] = dist[node] + 1;
        queue.push_back(next);
      }
    }
  }
  return -1;
}

}  // namespace

TEST_SUITE("wordnet") {

TEST_CASE("the bundled fixture parses with all pointers resolved") {
  const SynsetGraph& g = fixture();
  CHECK(g.synsets.size() == 50);
  CHECK(g.has_lemma("pizza"));
  CHECK(g.has_lemma("pizza pie"));
  CHECK(g.has_lemma("waiter"));
  CHECK_FALSE(g.has_lemma("qwzx"));
  // Root synsets carry no hypernyms; everything else points at an
  // existing synset.
  int roots = 0;
  for (const auto& s : g.synsets) roots += s.hypernyms.empty();
  CHECK(roots == 2);  // entity and abstract_entity
}

TEST_CASE("a three-synset chain yields two edges") {
  TempPair files(
      "dog n 1 1 @ 1 0 00000001\n"
      "canine n 1 1 @ 1 0 00000002\n"
      "animal n 1 0 1 0 00000003\n",
      "00000001 05 n 01 dog 0 001 @ 00000002 n 0000 | a domestic dog\n"
      "00000002 05 n 01 canine 0 001 @ 00000003 n 0000 | a canid\n"
      "00000003 05 n 01 animal 0 000 | a living organism\n");
  const SynsetGraph g = parse_wordnet(files.index_path, files.data_path);
  REQUIRE(g.synsets.size() == 3);
  size_t edges = 0;
  for (const auto& s : g.synsets) edges += s.hypernyms.size();
  CHECK(edges == 2);
  CHECK(path_similarity(g, "dog", "canine") == 0.5);
}

TEST_CASE("dangling pointers are reported with a byte offset") {
  TempPair files(
      "dog n 1 1 @ 1 0 00000001\n",
      "00000001 05 n 01 dog 0 001 @ 00000099 n 0000 | points nowhere\n");
  CHECK_THROWS_WITH_AS(parse_wordnet(files.index_path, files.data_path),
                       doctest::Contains("byte"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_wordnet(files.index_path, files.data_path),
                       doctest::Contains("dangling"), std::runtime_error);
}

TEST_CASE("hypernym cycles are rejected") {
  TempPair files(
      "dog n 1 1 @ 1 0 00000001\n"
      "canine n 1 1 @ 1 0 00000002\n",
      "00000001 05 n 01 dog 0 001 @ 00000002 n 0000 | a\n"
      "00000002 05 n 01 canine 0 001 @ 00000001 n 0000 | b\n");
  CHECK_THROWS_WITH_AS(parse_wordnet(files.index_path, files.data_path),
                       doctest::Contains("cycle"), std::runtime_error);
}

TEST_CASE("malformed offsets are parse errors") {
  TempPair files(
      "dog n 1 0 1 0 00000001\n",
      "0000000x 05 n 01 dog 0 000 | bad offset\n");
  CHECK_THROWS_WITH_AS(parse_wordnet(files.index_path, files.data_path),
                       doctest::Contains("malformed"), std::runtime_error);
}

TEST_CASE("path similarity: identity, direct hypernyms, oracle distances") {
  const SynsetGraph& g = fixture();
  CHECK(path_similarity(g, "pizza", "pizza") == 1.0);
  CHECK(path_similarity(g, "waiter", "waiter") == 1.0);
  // Shared synset, different lemmas.
  CHECK(path_similarity(g, "burger", "hamburger") == 1.0);
  // Direct hypernym pairs sit at distance 1.
  CHECK(path_similarity(g, "pizza", "food") == 0.5);
  CHECK(path_similarity(g, "pasta", "food") == 0.5);

  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"noodle", "pizza"}, {"waiter", "food"}, {"pizza", "sushi"}, {"waiter", "organism"}}) {
    const int d = oracle_distance(a, b);
    REQUIRE(d >= 0);
    CHECK(path_similarity(g, a, b) == doctest::Approx(1.0 / (1 + d)).epsilon(1e-15));
  }
  // The values behind the customization threshold example.
  CHECK(path_similarity(g, "pizza", "food") == doctest::Approx(0.5));
  CHECK(path_similarity(g, "waiter", "food") == doctest::Approx(0.1));
  CHECK(path_similarity(g, "noodle", "pizza") == doctest::Approx(0.25));
}

TEST_CASE("path similarity is symmetric and bounded") {
  const SynsetGraph& g = fixture();
  const std::vector<std::string> words = {"pizza", "pasta", "waiter", "service",
                                          "restaurant", "coffee", "menu"};
  for (const auto& a : words) {
    for (const auto& b : words) {
      const double ab = path_similarity(g, a, b);
      CHECK(ab == path_similarity(g, b, a));
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0);
    }
  }
}

TEST_CASE("similarity across the virtual root stays defined") {
  // service lives under the second root; food under the first.
  const SynsetGraph& g = fixture();
  const double sim = path_similarity(g, "service", "food");
  CHECK(sim > 0.0);
  CHECK(sim < 0.2);
}

TEST_CASE("unknown words raise a distinguished error") {
  CHECK_THROWS_AS(path_similarity(fixture(), "pizza", "qwzx"), UnknownWordError);
  CHECK_THROWS_AS(path_similarity(fixture(), "qwzx", "pizza"), UnknownWordError);
}

TEST_CASE("is_noun handles plurals, the stoplist and unknown tokens") {
  const SynsetGraph& g = fixture();
  CHECK(is_noun(g, "pizza"));
  CHECK(is_noun(g, "pizzas"));           // s -> pizza
  CHECK(noun_lemma(g, "pizzas") == "pizza");
  CHECK(noun_lemma(g, "sauces") == "sauce");      // es fallback to s
  CHECK(noun_lemma(g, "eateries") == "eatery");   // ies -> y
  CHECK(noun_lemma(g, "dishes") == "");           // no dish in the fixture
  CHECK_FALSE(is_noun(g, "the"));  // stoplist
  CHECK_FALSE(is_noun(g, "can"));  // stoplist guards the homograph
  CHECK_FALSE(is_noun(g, "qwzx"));
  CHECK_FALSE(is_noun(g, ""));
  // Case invariance.
  CHECK(is_noun(g, "Pizza"));
  CHECK(is_noun(g, "PIZZAS"));
  CHECK(noun_lemma(g, "Pizza") == "pizza");
}

TEST_CASE("parsing is independent of data line order") {
  std::ifstream data(testpaths::wordnet_data());
  std::vector<std::string> header, lines;
  std::string line;
  while (std::getline(data, line)) {
    (line.empty() || line[0] == ' ' ? header : lines).push_back(line);
  }
  Rng rng(31337);
  rng.shuffle(lines);
  std::string permuted;
  for (const auto& l : header) permuted += l + "\n";
  for (const auto& l : lines) permuted += l + "\n";

  std::ifstream index_in(testpaths::wordnet_index());
  std::string index_contents((std::istreambuf_iterator<char>(index_in)),
                             std::istreambuf_iterator<char>());
  TempPair files(index_contents, permuted);
  const SynsetGraph permuted_graph = parse_wordnet(files.index_path, files.data_path);
  const SynsetGraph& original = fixture();

  REQUIRE(permuted_graph.synsets.size() == original.synsets.size());
  // Canonical form: offset -> (lemmas, hypernym offsets).
  const auto canonical = [](const SynsetGraph& g) {
    std::map<int64_t, std::pair<std::set<std::string>, std::set<int64_t>>> m;
    for (const auto& s : g.synsets) {
      std::set<int64_t> hypers;
      for (const int h : s.hypernyms) hypers.insert(g.synsets[h].offset);
      m[s.offset] = {{s.lemmas.begin(), s.lemmas.end()}, hypers};
    }
    return m;
  };
  CHECK(canonical(permuted_graph) == canonical(original));
}

TEST_CASE("a real WordNet database passes validation when available") {
  const char* home = std::getenv("WNHOME");
  if (home == nullptr) return;  // full database not installed here
  const std::string base = std::string(home) + "/dict";
  const SynsetGraph g = parse_wordnet(base + "/index.noun", base + "/data.noun");
  CHECK(g.synsets.size() > 50000);
  CHECK(path_similarity(g, "dog", "dog") == 1.0);
}

}  // TEST_SUITE
