#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "doctest.h"
#include "revkit/corpus.hpp"
#include "revkit/prng.hpp"
#include "revkit/vocab.hpp"

using namespace revkit;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "corpus_test_" + std::to_string(counter++) + ".jsonl";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

Corpus corpus_of(std::initializer_list<std::string> texts) {
  Corpus c;
  for (const auto& t : texts) {
    Review r;
    r.text = t;
    c.reviews.push_back(r);
  }
  return c;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("load_reviews reads one review per line in order") {
  TempFile f(R"({"text":"first","stars":4,"business_id":"b1","label":"real","useful":2}
{"text":"second"}
{"text":"third","label":"generated"}
)");
  const Corpus c = load_reviews(f.path);
  REQUIRE(c.size() == 3);
  CHECK(c.reviews[0].text == "first");
  CHECK(c.reviews[0].stars == 4);
  CHECK(c.reviews[0].business_id == "b1");
  CHECK(c.reviews[0].label == Label::kReal);
  CHECK(c.reviews[0].usefulness == 2);
  // Defaults for missing optional fields.
  CHECK(c.reviews[1].stars == 5);
  CHECK(c.reviews[1].business_id.empty());
  CHECK(c.reviews[1].label == Label::kUnknown);
  CHECK_FALSE(c.reviews[1].usefulness.has_value());
  CHECK(c.reviews[2].label == Label::kGenerated);
}

TEST_CASE("load_reviews of an empty file yields an empty corpus") {
  TempFile f("");
  CHECK(load_reviews(f.path).size() == 0);
}

TEST_CASE("load_reviews rejects out-of-range stars naming the line") {
  TempFile f("{\"text\":\"a\"}\n{\"text\":\"ok\",\"stars\":7}\n");
  CHECK_THROWS_WITH_AS(load_reviews(f.path), doctest::Contains(":2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(load_reviews(f.path), doctest::Contains("1..5"), std::runtime_error);
}

TEST_CASE("load_reviews reports malformed JSON with its line number") {
  TempFile f("{\"text\":\"a\"}\nnot json\n");
  CHECK_THROWS_WITH_AS(load_reviews(f.path), doctest::Contains(":2"), std::runtime_error);
}

TEST_CASE("load_reviews fails cleanly on a missing file") {
  CHECK_THROWS_AS(load_reviews("no_such_file.jsonl"), std::runtime_error);
}

TEST_CASE("preprocess collapses whitespace and strips non-ASCII") {
  CHECK(preprocess("Great\t\tfood!\n") == "Great food!");
  CHECK(preprocess("caf\xc3\xa9 bon") == "caf bon");
  CHECK(preprocess("") == "");
  CHECK(preprocess("  trimmed  ends  ") == "trimmed ends");
  CHECK(preprocess("a\r\nb") == "a b");
  CHECK(preprocess("\x01掃\x7f") == "");
}

TEST_CASE("preprocess is idempotent") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    const int len = static_cast<int>(rng.next_below(64));
    for (int i = 0; i < len; ++i) s.push_back(static_cast<char>(rng.next_below(256)));
    const std::string once = preprocess(s);
    CHECK(preprocess(once) == once);
  }
}

TEST_CASE("to_training_stream wraps each review in delimiters") {
  const Corpus ab = corpus_of({"ab"});
  const Vocabulary vocab = build_vocabulary(ab);
  CHECK(to_training_stream(ab, vocab) ==
        std::vector<int>{vocab.sor_id, vocab.id_of('a'), vocab.id_of('b'), vocab.eor_id});

  CHECK(to_training_stream(Corpus{}, vocab).empty());

  const Corpus two = corpus_of({"a", "b"});
  CHECK(to_training_stream(two, vocab) ==
        std::vector<int>{vocab.sor_id, vocab.id_of('a'), vocab.eor_id, vocab.sor_id,
                         vocab.id_of('b'), vocab.eor_id});
}

TEST_CASE("to_training_stream round-trips the review texts") {
  const Corpus c = corpus_of({"hello world", "second one!", "", "third"});
  const Vocabulary vocab = build_vocabulary(c);
  const std::vector<int> stream = to_training_stream(c, vocab);

  std::vector<std::string> decoded;
  std::string current;
  for (const int id : stream) {
    if (id == vocab.sor_id) {
      current.clear();
    } else if (id == vocab.eor_id) {
      decoded.push_back(current);
    } else {
      current.push_back(vocab.char_of(id));
    }
  }
  REQUIRE(decoded.size() == c.size());
  for (size_t i = 0; i < c.size(); ++i) CHECK(decoded[i] == c.reviews[i].text);
}

TEST_CASE("to_training_stream names the character and review on OOV") {
  const Corpus c = corpus_of({"ab"});
  const Vocabulary vocab = build_vocabulary(c);
  const Corpus bad = corpus_of({"ab", "ax"});
  CHECK_THROWS_WITH_AS(to_training_stream(bad, vocab), doctest::Contains("'x'"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(to_training_stream(bad, vocab), doctest::Contains("review 1"),
                       std::runtime_error);
}

TEST_CASE("split honors the extreme fractions") {
  const Corpus c = corpus_of({"a", "b", "c", "d"});
  const auto [all, none] = split(c, 0.0, 1);
  CHECK(all.size() == 4);
  CHECK(none.size() == 0);
  const auto [empty, everything] = split(c, 1.0, 1);
  CHECK(empty.size() == 0);
  CHECK(everything.size() == 4);
}

TEST_CASE("split is deterministic and partitions exactly") {
  Corpus c;
  for (int i = 0; i < 10; ++i) {
    Review r;
    r.text = "review " + std::to_string(i);
    c.reviews.push_back(r);
  }
  const auto [kept1, held1] = split(c, 0.3, 42);
  const auto [kept2, held2] = split(c, 0.3, 42);
  CHECK(held1.size() == 3);  // round(0.3 * 10)
  REQUIRE(kept1.size() == kept2.size());
  for (size_t i = 0; i < kept1.size(); ++i) CHECK(kept1.reviews[i].text == kept2.reviews[i].text);
  for (size_t i = 0; i < held1.size(); ++i) CHECK(held1.reviews[i].text == held2.reviews[i].text);

  // Union is the input multiset, intersection empty.
  std::map<std::string, int> counts;
  for (const auto& r : kept1.reviews) ++counts[r.text];
  for (const auto& r : held1.reviews) ++counts[r.text];
  CHECK(counts.size() == 10);
  for (const auto& [_, n] : counts) CHECK(n == 1);

  const auto [kept3, held3] = split(c, 0.3, 43);
  bool any_difference = kept3.size() != kept1.size();
  for (size_t i = 0; !any_difference && i < kept1.size(); ++i) {
    any_difference = kept1.reviews[i].text != kept3.reviews[i].text;
  }
  CHECK(any_difference);  // different seed, different cut (overwhelmingly)
}

TEST_CASE("vocabulary ids are sorted with delimiters last") {
  const Corpus c = corpus_of({"ab", "ba"});
  const Vocabulary v = build_vocabulary(c);
  CHECK(v.size == 4);
  CHECK(v.id_of('a') == 0);
  CHECK(v.id_of('b') == 1);
  CHECK(v.sor_id == 2);
  CHECK(v.eor_id == 3);
  CHECK(v.id_of('z') == -1);

  const Vocabulary v2 = build_vocabulary(c);
  CHECK(v2.chars == v.chars);

  const Corpus empty_review = corpus_of({""});
  CHECK(build_vocabulary(empty_review).size == 2);

  CHECK_THROWS_AS(build_vocabulary(Corpus{}), std::invalid_argument);
}

TEST_CASE("save_reviews round-trips through load_reviews") {
  Corpus c = corpus_of({"one review", "two reviews"});
  c.reviews[0].label = Label::kGenerated;
  c.reviews[0].stars = 3;
  TempFile f("");
  save_reviews(c, f.path);
  const Corpus back = load_reviews(f.path);
  REQUIRE(back.size() == 2);
  CHECK(back.reviews[0].text == "one review");
  CHECK(back.reviews[0].label == Label::kGenerated);
  CHECK(back.reviews[0].stars == 3);
}

}  // TEST_SUITE
