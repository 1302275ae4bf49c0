#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "revkit/customize.hpp"
#include "support/paths.hpp"

using namespace revkit;

namespace {

const WordnetSimilarity& provider() {
  static const WordnetSimilarity p(
      parse_wordnet(testpaths::wordnet_index(), testpaths::wordnet_data()));
  return p;
}

Corpus corpus_of(std::initializer_list<std::string> texts) {
  Corpus c;
  c.source = "inline";
  for (const auto& t : texts) {
    Review r;
    r.text = t;
    c.reviews.push_back(r);
  }
  return c;
}

ReplacementPool pool_of(std::initializer_list<ReplacementPool::Entry> entries) {
  ReplacementPool p;
  p.entries = entries;
  return p;
}

}  // namespace

TEST_SUITE("customize") {

TEST_CASE("pool collects distinct related nouns above the threshold") {
  // pizza and pasta sit at similarity 0.5 to food, waiter at 0.1.
  const Corpus reference = corpus_of({"the pizza was great and the waiter was kind",
                                      "pasta again, pizza again"});
  const ReplacementPool pool = build_replacement_pool(reference, "food", provider(), 0.2);
  REQUIRE(pool.size() == 2);
  CHECK(pool.entries[0].noun == "pasta");  // lexicographic order
  CHECK(pool.entries[1].noun == "pizza");
  CHECK(pool.entries[0].sim_to_keyword == doctest::Approx(0.5));
  CHECK(pool.entries[1].sim_to_keyword == doctest::Approx(0.5));
}

TEST_CASE("empty reference corpus gives an empty pool") {
  CHECK(build_replacement_pool(Corpus{}, "food", provider(), 0.2).empty());
}

TEST_CASE("plural mentions normalize into one pool entry") {
  const Corpus reference = corpus_of({"pizzas pizza Pizza PIZZAS"});
  const ReplacementPool pool = build_replacement_pool(reference, "food", provider(), 0.2);
  REQUIRE(pool.size() == 1);
  CHECK(pool.entries[0].noun == "pizza");
}

TEST_CASE("unknown keyword is a distinguished error") {
  CHECK_THROWS_AS(build_replacement_pool(corpus_of({"pizza"}), "qwzx", provider(), 0.2),
                  UnknownWordError);
}

TEST_CASE("single-entry pool forces the replacement") {
  const ReplacementPool pool = pool_of({{"pasta", 0.5}});
  CustomizeConfig cfg;
  cfg.seed = 7;
  CHECK(customize("The sushi was fresh.", pool, provider(), cfg) == "The pasta was fresh.");
}

TEST_CASE("empty pool returns the review verbatim") {
  CustomizeConfig cfg;
  const std::string review = "The sushi was fresh.";
  CHECK(customize(review, ReplacementPool{}, provider(), cfg) == review);
}

TEST_CASE("capitalization and punctuation survive the substitution") {
  const ReplacementPool pool = pool_of({{"pasta", 0.5}});
  CustomizeConfig cfg;
  CHECK(customize("Sushi! Sushi, sushi...", pool, provider(), cfg) ==
        "Pasta! Pasta, pasta...");
  CHECK(customize("(sushi)", pool, provider(), cfg) == "(pasta)");
}

TEST_CASE("tokens at or below the threshold are never modified") {
  const ReplacementPool pool = pool_of({{"pasta", 0.5}});
  CustomizeConfig cfg;
  // waiter: similarity 0.1 to food; service is not under the food subtree.
  const std::string review = "the waiter praised the service";
  CHECK(customize(review, pool, provider(), cfg) == review);
}

TEST_CASE("every replacement comes from the pool and word count is stable") {
  const Corpus reference = corpus_of({"pizza pasta burger soup salad bread cheese"});
  const ReplacementPool pool = build_replacement_pool(reference, "food", provider(), 0.2);
  REQUIRE(pool.size() >= 5);

  std::map<std::string, bool> in_pool;
  for (const auto& e : pool.entries) in_pool[e.noun] = true;

  CustomizeConfig cfg;
  cfg.seed = 3;
  const std::string review = "The sushi and the noodle arrived with coffee.";
  const std::string result = customize(review, pool, provider(), cfg);

  const auto words = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
  };
  const auto before = words(review);
  const auto after = words(result);
  REQUIRE(before.size() == after.size());
  for (size_t i = 0; i < before.size(); ++i) {
    if (before[i] == after[i]) continue;
    // Changed tokens must be pool nouns (modulo punctuation/case).
    std::string core;
    for (const char c : after[i]) {
      if (std::isalnum(static_cast<unsigned char>(c))) {
        core.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      }
    }
    CHECK(in_pool.count(core));
  }
}

TEST_CASE("customization is deterministic per seed") {
  const Corpus reference = corpus_of({"pizza pasta burger soup salad"});
  const ReplacementPool pool = build_replacement_pool(reference, "food", provider(), 0.2);
  CustomizeConfig cfg;
  cfg.seed = 11;
  const std::string review = "the sushi was divine and the noodle was fine";
  CHECK(customize(review, pool, provider(), cfg) == customize(review, pool, provider(), cfg));
  CustomizeConfig other = cfg;
  other.seed = 12;
  // Different seeds are allowed to differ (and do here, with 5 choices).
  const std::string a = customize(review, pool, provider(), cfg);
  const std::string b = customize(review, pool, provider(), other);
  CHECK(a.size() > 0);
  CHECK(b.size() > 0);
}

TEST_CASE("equidistant pool entries are drawn uniformly") {
  // sim(sushi, pizza) = sim(sushi, pasta) = 1/3 through food, so the
  // softmax over the pool is exactly uniform; 10,000 seeded draws land
  // within 0.5 +/- 0.02 of each entry (about four standard deviations).
  const ReplacementPool pool = pool_of({{"pasta", 0.5}, {"pizza", 0.5}});
  int pasta = 0, pizza = 0;
  for (int seed = 0; seed < 10000; ++seed) {
    CustomizeConfig cfg;
    cfg.seed = static_cast<uint64_t>(seed);
    const std::string out = customize("sushi", pool, provider(), cfg);
    if (out == "pasta") ++pasta;
    else if (out == "pizza") ++pizza;
  }
  CHECK(pasta + pizza == 10000);
  CHECK(pasta > (0.5 - 0.02) * 10000);
  CHECK(pasta < (0.5 + 0.02) * 10000);
}

TEST_CASE("customization_rate counts changed reviews") {
  const ReplacementPool pool = pool_of({{"pasta", 0.5}});
  CustomizeConfig cfg;

  // 3 of 4 reviews contain a qualifying noun (pasta replacing itself
  // still matches, so use nouns that must change: sushi -> pasta).
  const Corpus mixed = corpus_of({"the sushi here", "sushi sushi", "more sushi please",
                                  "nothing relevant at all"});
  CHECK(customization_rate(mixed, pool, provider(), cfg) == doctest::Approx(0.75));

  CHECK(customization_rate(mixed, ReplacementPool{}, provider(), cfg) == 0.0);

  const Corpus all = corpus_of({"sushi first", "sushi second"});
  CHECK(customization_rate(all, pool, provider(), cfg) == 1.0);
}

}  // TEST_SUITE
