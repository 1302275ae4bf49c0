#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "revkit/defense.hpp"
#include "revkit/prng.hpp"

using namespace revkit;

namespace {

Corpus repeated(const std::string& text, int count, Label label) {
  Corpus c;
  for (int i = 0; i < count; ++i) {
    Review r;
    r.text = text;
    r.label = label;
    c.reviews.push_back(r);
  }
  return c;
}

TrainConfig tiny_config(uint64_t seed) {
  TrainConfig cfg;
  cfg.hidden = 8;
  cfg.layers = 1;
  cfg.batch_size = 2;
  cfg.bptt_len = 16;
  cfg.epochs = 20;
  cfg.initial_lr = 0.01;
  cfg.seed = seed;
  return cfg;
}

// Constant-distribution model: zero weights except the projection bias,
// so P(next char) is fixed regardless of context.
LanguageModel constant_model(const Vocabulary& vocab, const std::vector<double>& bias) {
  LanguageModel m;
  m.vocab = vocab;
  m.config = TrainConfig{};
  m.config.hidden = 2;
  m.config.layers = 1;
  m.params = LstmParams::zeros({1, 2, vocab.size});
  for (size_t i = 0; i < bias.size(); ++i) m.params.proj_bias()[i] = bias[i];
  return m;
}

}  // namespace

TEST_SUITE("defense") {

TEST_CASE("identical models give a zero ratio and a REAL verdict") {
  const Corpus ab = repeated("abab", 2, Label::kReal);
  const Vocabulary vocab = build_vocabulary(ab);
  DetectorModel det;
  det.rnn_f = constant_model(vocab, {0.3, -0.2});
  det.rnn_l = constant_model(vocab, {0.3, -0.2});

  const DetectionResult r = score(det, "abab");
  CHECK(r.mean_ratio == 0.0);
  CHECK(r.verdict == Verdict::kReal);  // strict tie goes to REAL
  CHECK(r.chars_scored == 4);
  REQUIRE(r.per_char_ratios.size() == 4);
  for (const double v : r.per_char_ratios) CHECK(v == 0.0);

  // An everything-REAL predictor reports zero recall and, by convention,
  // zero precision rather than a division error.
  Corpus balanced;
  for (int i = 0; i < 2; ++i) {
    Review f;
    f.text = "abab";
    f.label = Label::kGenerated;
    balanced.reviews.push_back(f);
    Review rr;
    rr.text = "baba";
    rr.label = Label::kReal;
    balanced.reviews.push_back(rr);
  }
  const EvalReport report = evaluate(det, balanced);
  CHECK(report.recall == 0.0);
  CHECK(report.precision == 0.0);
  CHECK(report.f_score == 0.0);
  CHECK(report.fn == 2);
  CHECK(report.tn == 2);
}

TEST_CASE("hand-set two-symbol models score ln 9 on the forced transition") {
  const Corpus ab = repeated("ab", 1, Label::kReal);
  const Vocabulary vocab = build_vocabulary(ab);
  REQUIRE(vocab.id_of('a') == 0);
  REQUIRE(vocab.id_of('b') == 1);

  // P_F = (0.1, 0.9, ~0, ~0) and P_L = (0.9, 0.1, ~0, ~0) over
  // (a, b, SOR, EOR): bias log-ratios force P(b)=0.9 vs 0.1.
  const double big = 25.0;  // suppress the delimiter ids
  DetectorModel det;
  det.rnn_f = constant_model(vocab, {big, big + std::log(9.0), 0.0, 0.0});
  det.rnn_l = constant_model(vocab, {big + std::log(9.0), big, 0.0, 0.0});

  const DetectionResult r = score(det, "ab");
  REQUIRE(r.per_char_ratios.size() == 2);
  // Transition a -> b: log(0.9) - log(0.1) = ln 9.
  CHECK(r.per_char_ratios[1] == doctest::Approx(std::log(9.0)).epsilon(1e-9));
  // Transition SOR -> a is the mirror image.
  CHECK(r.per_char_ratios[0] == doctest::Approx(-std::log(9.0)).epsilon(1e-9));
}

TEST_CASE("swapping the models negates every ratio exactly") {
  const Corpus fake = repeated("aaaaaaaaaaaaaaaa", 24, Label::kGenerated);
  const Corpus real = repeated("bbbbbbbbbbbbbbbb", 24, Label::kReal);
  const DetectorModel det = train_detector(fake, real, tiny_config(3));

  DetectorModel swapped;
  swapped.rnn_f = det.rnn_l;
  swapped.rnn_l = det.rnn_f;

  for (const std::string probe : {"aaaaaaaa", "bbbbbbbb", "abababab", "baab"}) {
    const DetectionResult fwd = score(det, probe);
    const DetectionResult rev = score(swapped, probe);
    CHECK(fwd.mean_ratio == -rev.mean_ratio);
    for (size_t i = 0; i < fwd.per_char_ratios.size(); ++i) {
      CHECK(fwd.per_char_ratios[i] == -rev.per_char_ratios[i]);
    }
    if (fwd.mean_ratio != 0.0) CHECK((fwd.verdict == Verdict::kFake) !=
                                     (rev.verdict == Verdict::kFake));
  }
}

TEST_CASE("disjoint single-character corpora separate perfectly") {
  const Corpus fake = repeated("aaaaaaaaaaaaaaaa", 24, Label::kGenerated);
  const Corpus real = repeated("bbbbbbbbbbbbbbbb", 24, Label::kReal);
  const DetectorModel det = train_detector(fake, real, tiny_config(1));

  // The fake-side model strongly prefers 'a' continuations.
  const std::vector<double> lp_a = char_log_probs(det.rnn_f, "aaaa");
  const std::vector<double> lp_b = char_log_probs(det.rnn_f, "bbbb");
  CHECK(lp_a[2] > lp_b[2]);
  CHECK(std::exp(lp_a[2]) > 0.9);

  Corpus test;
  for (int i = 0; i < 10; ++i) {
    Review f;
    f.text = "aaaaaaaaaa";
    f.label = Label::kGenerated;
    test.reviews.push_back(f);
    Review r;
    r.text = "bbbbbbbbbb";
    r.label = Label::kReal;
    test.reviews.push_back(r);
  }
  const EvalReport report = evaluate(det, test);
  CHECK(report.precision == doctest::Approx(1.0));
  CHECK(report.recall == doctest::Approx(1.0));
  CHECK(report.f_score == doctest::Approx(1.0));
  CHECK(report.skipped_short == 0);
}

TEST_CASE("same-seed training on identical corpora yields exactly zero ratios") {
  const Corpus shared = repeated("the same corpus twice", 8, Label::kReal);
  const Vocabulary vocab = build_vocabulary(shared);
  const TrainConfig cfg = tiny_config(9);
  DetectorModel det;
  det.rnn_f = train(shared, cfg, vocab);
  det.rnn_l = train(shared, cfg, vocab);

  const DetectionResult r = score(det, "the same corpus twice");
  CHECK(r.mean_ratio == 0.0);
  CHECK(r.verdict == Verdict::kReal);
}

TEST_CASE("empty corpora are rejected") {
  const Corpus real = repeated("bb", 4, Label::kReal);
  CHECK_THROWS_AS(train_detector(Corpus{}, real, tiny_config(0)), std::invalid_argument);
  CHECK_THROWS_AS(train_detector(real, Corpus{}, tiny_config(0)), std::invalid_argument);
}

TEST_CASE("scoring requires two characters and known characters") {
  const Corpus ab = repeated("abab", 2, Label::kReal);
  const Vocabulary vocab = build_vocabulary(ab);
  DetectorModel det;
  det.rnn_f = constant_model(vocab, {0, 0});
  det.rnn_l = constant_model(vocab, {0, 0});
  CHECK_THROWS_AS(score(det, "a"), std::invalid_argument);
  CHECK_THROWS_AS(score(det, "  a  "), std::invalid_argument);  // preprocess first
  CHECK_THROWS_AS(score(det, "axa"), std::runtime_error);
}

TEST_CASE("duplicated review stream keeps the same mean ratio") {
  const Corpus fake = repeated("aaaabbbb", 16, Label::kGenerated);
  const Corpus real = repeated("bbbbaaaa", 16, Label::kReal);
  const DetectorModel det = train_detector(fake, real, tiny_config(5));

  const std::string review = "aabbaabb";
  const DetectionResult once = score(det, review);
  // State resets per score() call, so scoring the review twice and
  // pooling the transitions is exactly the duplicated-stream mean.
  std::vector<double> doubled = once.per_char_ratios;
  doubled.insert(doubled.end(), once.per_char_ratios.begin(), once.per_char_ratios.end());
  double mean = 0.0;
  for (const double v : doubled) mean += v;
  mean /= static_cast<double>(doubled.size());
  CHECK(mean == doctest::Approx(once.mean_ratio).epsilon(1e-15));
}

TEST_CASE("evaluate rejects unlabeled reviews") {
  const Corpus fake = repeated("aaaa", 8, Label::kGenerated);
  const Corpus real = repeated("bbbb", 8, Label::kReal);
  const DetectorModel det = train_detector(fake, real, tiny_config(2));
  Corpus test = repeated("aaaa", 1, Label::kUnknown);
  CHECK_THROWS_AS(evaluate(det, test), std::invalid_argument);
}

TEST_CASE("the minimum-length policy skips and counts short reviews") {
  const Corpus fake = repeated("aaaaaaaa", 12, Label::kGenerated);
  const Corpus real = repeated("bbbbbbbb", 12, Label::kReal);
  DetectorModel det = train_detector(fake, real, tiny_config(4));

  Corpus test;
  for (int i = 0; i < 4; ++i) {
    Review f;
    f.text = "aaaaaaaaaa";
    f.label = Label::kGenerated;
    test.reviews.push_back(f);
    Review r;
    r.text = "bbbbbbbbbb";
    r.label = Label::kReal;
    test.reviews.push_back(r);
  }

  const DetectorModel unchanged = apply_min_length(det, 0);
  CHECK(evaluate(unchanged, test).skipped_short == 0);

  const DetectorModel strict = apply_min_length(det, 300);
  const EvalReport r = evaluate(strict, test);
  CHECK(r.skipped_short == 8);
  CHECK(r.tp + r.fp + r.tn + r.fn == 0);
  CHECK(r.f_score == 0.0);

  CHECK_THROWS_AS(apply_min_length(det, -1), std::invalid_argument);
}

TEST_CASE("longer reviews give lower-variance mean ratios") {
  // The mechanism behind the minimum-length policy: the mean ratio over
  // L transitions tightens as L grows. Variance over 100 held-out texts
  // must fall monotonically across the length buckets.
  const auto make_text = [](uint64_t seed, const std::vector<std::string>& bank) {
    Rng rng(seed);
    std::string text;
    while (text.size() < 430) {
      if (!text.empty()) text.push_back(' ');
      text += bank[rng.next_below(bank.size())];
    }
    return text.substr(0, 420);
  };
  const std::vector<std::string> real_bank = {"the soup was warm",  "fresh bread daily",
                                              "a quiet corner",     "service with a smile",
                                              "worth every penny",  "our usual table"};
  const std::vector<std::string> fake_bank = {"teh soup was wram",  "frehs bread dialy",
                                              "a qiuet cornre",     "service wiht a simle",
                                              "wroth every pnney",  "our usaul tabel"};
  Corpus fake, real;
  for (int i = 0; i < 40; ++i) {
    Review f;
    f.text = make_text(1000 + i, fake_bank);
    f.label = Label::kGenerated;
    fake.reviews.push_back(f);
    Review r;
    r.text = make_text(2000 + i, real_bank);
    r.label = Label::kReal;
    real.reviews.push_back(r);
  }
  TrainConfig cfg = tiny_config(8);
  cfg.hidden = 16;
  cfg.bptt_len = 32;
  cfg.epochs = 6;
  const DetectorModel det = train_detector(fake, real, cfg);

  // One scoring pass per text; prefix means reuse the per-char ratios
  // (the model is causal, so the prefix mean equals scoring the prefix).
  const std::vector<int> buckets = {50, 100, 200, 400};
  std::vector<std::vector<double>> bucket_means(buckets.size());
  for (int i = 0; i < 100; ++i) {
    const DetectionResult r = score(det, make_text(3000 + i, real_bank));
    REQUIRE(r.chars_scored >= 400);
    for (size_t b = 0; b < buckets.size(); ++b) {
      double mean = 0.0;
      for (int t = 0; t < buckets[b]; ++t) mean += r.per_char_ratios[t];
      bucket_means[b].push_back(mean / buckets[b]);
    }
  }
  const auto variance = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (const double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (const double x : xs) var += (x - mean) * (x - mean);
    return var / xs.size();
  };
  double prev = variance(bucket_means[0]);
  for (size_t b = 1; b < buckets.size(); ++b) {
    const double current = variance(bucket_means[b]);
    CHECK(current < prev);
    prev = current;
  }
}

TEST_CASE("detector persistence round-trips scores bitwise") {
  const Corpus fake = repeated("aaaabb", 12, Label::kGenerated);
  const Corpus real = repeated("bbbbaa", 12, Label::kReal);
  DetectorModel det = train_detector(fake, real, tiny_config(6));
  det = apply_min_length(det, 7);

  const std::string dir = "detector_roundtrip_test";
  const std::string manifest = save_detector(det, dir);
  const DetectorModel back = load_detector(manifest);
  std::filesystem::remove_all(dir);

  CHECK(back.min_length == 7);
  const std::string probe = "abababab";
  CHECK(score(back, probe).mean_ratio == score(det, probe).mean_ratio);
  CHECK(score(back, probe).per_char_ratios == score(det, probe).per_char_ratios);
}

}  // TEST_SUITE
