// revkit: train character-level review generators, sample and customize
// reviews, and run the three detectors (dual-model likelihood ratio,
// winnowing plagiarism, linguistic SVM) plus the evaluation harnesses.
//
// Machine-readable outputs go to files; human summaries go to stderr.
// Exit codes: 0 ok, 2 usage error, 1 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "revkit/corpus.hpp"
#include "revkit/customize.hpp"
#include "revkit/defense.hpp"
#include "revkit/experiments.hpp"
#include "revkit/langmodel.hpp"
#include "revkit/linguistic.hpp"
#include "revkit/svm.hpp"
#include "revkit/winnow.hpp"
#include "revkit/wordnet.hpp"

namespace {

using namespace revkit;

void require_file(const std::string& path, const std::string& what) {
  if (!std::filesystem::exists(path)) {
    throw std::runtime_error(what + " not found: " + path);
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Optional JSON config file; explicit command-line flags win.
struct ConfigOverlay {
  nlohmann::json values = nlohmann::json::object();

  void load(const std::string& path) {
    require_file(path, "config file");
    std::ifstream in(path);
    in >> values;
    if (!values.is_object()) throw std::runtime_error("config file must hold a JSON object");
  }

  template <typename T>
  void apply(const CLI::App* cmd, const std::string& flag, const std::string& key,
             T& target) const {
    if (cmd->get_option(flag)->count() > 0) return;
    if (values.contains(key)) target = values.at(key).get<T>();
  }
};

// Training hyperparameter flags shared by several subcommands. Precedence:
// explicit flag > config-file key > preset > built-in default.
struct TrainFlags {
  CLI::App* cmd = nullptr;
  std::string preset_name;
  int hidden = 128;
  int layers = 1;
  int batch = 16;
  int bptt = 128;
  int epochs = 10;
  double lr = 2e-3;

  void attach(CLI::App* c) {
    cmd = c;
    c->add_option("--preset", preset_name, "named training preset (see README)");
    c->add_option("--hidden", hidden, "hidden units per layer");
    c->add_option("--layers", layers, "LSTM layers");
    c->add_option("--batch", batch, "batch size");
    c->add_option("--bptt", bptt, "truncated BPTT segment length");
    c->add_option("--epochs", epochs, "training epochs");
    c->add_option("--lr", lr, "initial learning rate");
  }

  TrainConfig resolve(const ConfigOverlay& overlay, uint64_t seed) const {
    std::string chosen = preset_name;
    overlay.apply(cmd, "--preset", "preset", chosen);
    TrainConfig cfg;
    if (!chosen.empty()) cfg = preset(chosen);

    const auto pick = [&](const char* flag, const char* key, auto& field, auto flag_value) {
      if (cmd->get_option(flag)->count() > 0) {
        field = flag_value;
      } else if (overlay.values.contains(key)) {
        field = overlay.values.at(key).get<std::decay_t<decltype(flag_value)>>();
      }
    };
    pick("--hidden", "hidden", cfg.hidden, hidden);
    pick("--layers", "layers", cfg.layers, layers);
    pick("--batch", "batch", cfg.batch_size, batch);
    pick("--bptt", "bptt", cfg.bptt_len, bptt);
    pick("--epochs", "epochs", cfg.epochs, epochs);
    pick("--lr", "lr", cfg.initial_lr, lr);
    cfg.seed = seed;
    return cfg;
  }
};

nlohmann::json report_to_json(const EvalReport& r) {
  return {
      {"precision", r.precision}, {"recall", r.recall}, {"f_score", r.f_score},
      {"tp", r.tp},               {"fp", r.fp},         {"tn", r.tn},
      {"fn", r.fn},               {"skipped_short", r.skipped_short},
      {"scored", r.tp + r.fp + r.tn + r.fn},
  };
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << j.dump(2) << '\n';
}

struct FeatureTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;  // +1 fake/generated, -1 real
};

FeatureTable read_feature_csv(const std::string& path) {
  require_file(path, "feature CSV");
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty feature CSV");

  FeatureTable table;
  std::stringstream header(line);
  std::string cell;
  bool first = true;
  while (std::getline(header, cell, ',')) {
    if (first) {
      if (cell != "label") throw std::runtime_error(path + ": first column must be \"label\"");
      first = false;
    } else {
      table.names.push_back(cell);
    }
  }
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::getline(row, cell, ',');
    const Label label = parse_label(cell);
    if (label == Label::kUnknown) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": rows must be labeled real, fake or generated");
    }
    table.labels.push_back(label == Label::kReal ? -1 : +1);
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() != table.names.size()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(table.names.size()) + " features, got " +
                               std::to_string(values.size()));
    }
    table.rows.push_back(std::move(values));
  }
  return table;
}

struct LinguisticPaths {
  std::string wn_index = "data/wordnet/index.noun";
  std::string wn_data = "data/wordnet/data.noun";
  std::string verbs = "data/lexicons/verbs.txt";
  std::string adjectives = "data/lexicons/adjectives.txt";
  std::string adverbs = "data/lexicons/adverbs.txt";
  std::string sentiment = "data/lexicons/sentiment.tsv";
  std::string categories = "data/lexicons/categories.txt";

  void attach_wordnet(CLI::App* c) {
    c->add_option("--wordnet-index", wn_index, "WordNet index.noun");
    c->add_option("--wordnet-data", wn_data, "WordNet data.noun");
  }
  void attach_all(CLI::App* c) {
    attach_wordnet(c);
    c->add_option("--verbs", verbs, "verb word list");
    c->add_option("--adjectives", adjectives, "adjective word list");
    c->add_option("--adverbs", adverbs, "adverb word list");
    c->add_option("--sentiment", sentiment, "sentiment lexicon TSV");
    c->add_option("--categories", categories, "category lexicon");
  }
  void require_wordnet() const {
    require_file(wn_index, "WordNet index");
    require_file(wn_data, "WordNet data");
  }
  void require_all() const {
    require_wordnet();
    require_file(verbs, "verb list");
    require_file(adjectives, "adjective list");
    require_file(adverbs, "adverb list");
    require_file(sentiment, "sentiment lexicon");
    require_file(categories, "category lexicon");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"review generation and detection toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; explicit flags win");

  ConfigOverlay overlay;
  LinguisticPaths paths;

  std::string corpus_path, out_path, model_path, log_path, reference_path, keyword = "food";
  std::string fake_path, real_path, detector_path, input_path, index_path, features_path;
  std::string text_arg, business_id;
  uint64_t seed = 0;
  double temperature = 1.0, min_sim = 0.2, subj_threshold = 0.5;
  int count = 10, max_len = 1000, min_length = 0, winnow_k = 5, winnow_w = 4, folds = 10;
  bool customize_flag = false, self_check = false;
  double svm_lambda = 1e-4, svm_lr = 0.01;
  int svm_epochs = 50;
  std::vector<double> grid = {0.3, 0.7, 1.0};
  std::vector<int> ladder = {32, 64, 128};
  int attacker_count = 300, defense_count = 300, test_count = 100;
  int detector_hidden = 0, detector_epochs = 0;  // 0: same as the attacker

  TrainFlags lm_flags, det_flags, xt_flags, ms_flags;

  CLI::App* train_lm = app.add_subcommand("train-lm", "train a character language model");
  train_lm->add_option("--corpus", corpus_path, "JSONL review corpus")->required();
  train_lm->add_option("--out", out_path, "output model file")->required();
  train_lm->add_option("--log", log_path, "training-log CSV path");
  train_lm->add_option("--seed", seed, "training seed");
  lm_flags.attach(train_lm);

  CLI::App* generate = app.add_subcommand("generate", "sample reviews from a model");
  generate->add_option("--model", model_path, "trained model file")->required();
  generate->add_option("--out", out_path, "output JSONL")->required();
  generate->add_option("--temperature", temperature, "sampling temperature (> 0)");
  generate->add_option("--count", count, "number of reviews");
  generate->add_option("--seed", seed, "base sampling seed; review i uses seed+i");
  generate->add_option("--max-len", max_len, "per-review character cap");
  generate->add_option("--business", business_id, "business id stamped on each review");
  generate->add_flag("--customize", customize_flag, "replace context nouns afterwards");
  generate->add_option("--reference", reference_path, "reference corpus for customization");
  generate->add_option("--keyword", keyword, "customization keyword");
  generate->add_option("--min-sim", min_sim, "customization similarity threshold");
  paths.attach_wordnet(generate);

  CLI::App* detect_train = app.add_subcommand("detect-train", "train the dual-model detector");
  detect_train->add_option("--fake", fake_path, "JSONL of known machine-generated reviews")
      ->required();
  detect_train->add_option("--real", real_path, "JSONL of real reviews")->required();
  detect_train->add_option("--out", out_path, "output directory")->required();
  detect_train->add_option("--seed", seed, "training seed");
  detect_train->add_option("--min-length", min_length, "minimum review length policy");
  det_flags.attach(detect_train);

  CLI::App* detect_score = app.add_subcommand("detect-score", "score reviews with a detector");
  detect_score->add_option("--detector", detector_path, "detector manifest JSON")->required();
  detect_score->add_option("--input", input_path, "JSONL reviews to score");
  detect_score->add_option("--text", text_arg, "score a single review text");
  detect_score->add_option("--out", out_path, "output JSONL (default: stdout)");

  std::string csv_path;
  CLI::App* detect_eval = app.add_subcommand("detect-eval", "evaluate a detector");
  detect_eval->add_option("--detector", detector_path, "detector manifest JSON")->required();
  detect_eval->add_option("--input", input_path, "labeled JSONL test corpus")->required();
  detect_eval->add_option("--out", out_path, "report JSON path")->required();
  detect_eval->add_option("--csv", csv_path, "also write the report as one-row CSV");
  detect_eval->add_option("--min-length", min_length, "override the manifest's policy");

  CLI::App* plag_index = app.add_subcommand("plagiarism-index", "fingerprint a review database");
  plag_index->add_option("--corpus", corpus_path, "JSONL review corpus")->required();
  plag_index->add_option("--out", out_path, "output index file")->required();
  plag_index->add_option("--k", winnow_k, "k-gram length");
  plag_index->add_option("--w", winnow_w, "winnowing window");

  CLI::App* plag_check = app.add_subcommand("plagiarism-check", "score reviews against an index");
  plag_check->add_option("--index", index_path, "fingerprint index file")->required();
  plag_check->add_option("--input", input_path, "JSONL reviews to check")->required();
  plag_check->add_option("--out", out_path, "output CSV")->required();
  plag_check->add_flag("--self", self_check,
                       "probes are the indexed corpus itself; row i skips entry i");

  CLI::App* features_cmd = app.add_subcommand("features", "extract linguistic feature vectors");
  features_cmd->add_option("--input", input_path, "labeled JSONL corpus")->required();
  features_cmd->add_option("--out", out_path, "output CSV")->required();
  features_cmd->add_option("--subjectivity-threshold", subj_threshold,
                           "positivity+negativity bound for subjective words");
  paths.attach_all(features_cmd);

  CLI::App* classify_train = app.add_subcommand("classify-train", "train the linear SVM");
  classify_train->add_option("--features", features_path, "feature CSV")->required();
  classify_train->add_option("--out", out_path, "classifier JSON path")->required();
  classify_train->add_option("--lambda", svm_lambda, "L2 penalty");
  classify_train->add_option("--epochs", svm_epochs, "SGD epochs");
  classify_train->add_option("--lr", svm_lr, "SGD learning rate");
  classify_train->add_option("--seed", seed, "shuffling seed");

  CLI::App* classify_eval =
      app.add_subcommand("classify-eval", "stratified k-fold cross validation");
  classify_eval->add_option("--features", features_path, "feature CSV")->required();
  classify_eval->add_option("--out", out_path, "report JSON path")->required();
  classify_eval->add_option("--folds", folds, "number of folds");
  classify_eval->add_option("--lambda", svm_lambda, "L2 penalty");
  classify_eval->add_option("--epochs", svm_epochs, "SGD epochs");
  classify_eval->add_option("--lr", svm_lr, "SGD learning rate");
  classify_eval->add_option("--seed", seed, "fold/shuffle seed");

  CLI::App* experiment = app.add_subcommand("experiment", "evaluation harnesses");
  experiment->require_subcommand(1);

  CLI::App* cross_temp = experiment->add_subcommand(
      "cross-temperature", "train detectors at T_train, test at T_test over a grid");
  cross_temp->add_option("--corpus", corpus_path, "real-review JSONL corpus")->required();
  cross_temp->add_option("--out", out_path, "matrix CSV path")->required();
  cross_temp->add_option("--grid", grid, "temperature grid");
  cross_temp->add_option("--attacker-count", attacker_count, "attacker training reviews");
  cross_temp->add_option("--defense-count", defense_count, "per-side detector reviews");
  cross_temp->add_option("--test-count", test_count, "per-side held-out reviews");
  cross_temp->add_option("--seed", seed, "experiment seed");
  cross_temp->add_option("--detector-hidden", detector_hidden,
                         "detector hidden units (default: attacker's)");
  cross_temp->add_option("--detector-epochs", detector_epochs,
                         "detector epochs (default: attacker's)");
  xt_flags.attach(cross_temp);

  CLI::App* model_size = experiment->add_subcommand(
      "model-size", "detector F-score and attacker cost across model sizes");
  model_size->add_option("--corpus", corpus_path, "real-review JSONL corpus")->required();
  model_size->add_option("--out", out_path, "tradeoff CSV path")->required();
  model_size->add_option("--ladder", ladder, "attacker hidden-unit ladder");
  model_size->add_option("--attacker-count", attacker_count, "attacker training reviews");
  model_size->add_option("--defense-count", defense_count, "per-side detector reviews");
  model_size->add_option("--test-count", test_count, "per-side held-out reviews");
  model_size->add_option("--temperature", temperature, "generation temperature");
  model_size->add_option("--seed", seed, "experiment seed");
  model_size->add_option("--detector-hidden", detector_hidden,
                         "detector hidden units (default: attacker's)");
  model_size->add_option("--detector-epochs", detector_epochs,
                         "detector epochs (default: attacker's)");
  ms_flags.attach(model_size);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) overlay.load(config_path);

    if (*train_lm) {
      overlay.apply(train_lm, "--corpus", "corpus", corpus_path);
      overlay.apply(train_lm, "--seed", "seed", seed);
      require_file(corpus_path, "corpus");
      const TrainConfig cfg = lm_flags.resolve(overlay, seed);
      const Corpus corpus = preprocess_corpus(load_reviews(corpus_path));
      const LanguageModel model = train(corpus, cfg);
      save(model, out_path);
      if (!log_path.empty()) write_training_log_csv(model, log_path);
      std::cerr << "trained " << cfg.layers << "x" << cfg.hidden << " model on "
                << corpus.size() << " reviews; final loss "
                << (model.training_log.empty() ? 0.0 : model.training_log.back().loss)
                << "; saved to " << out_path << "\n";
    } else if (*generate) {
      require_file(model_path, "model");
      if (!(temperature > 0.0)) {
        std::cerr << "error: --temperature must be > 0\n";
        return 2;
      }
      std::optional<WordnetSimilarity> provider;
      std::optional<ReplacementPool> pool;
      CustomizeConfig cust;
      if (customize_flag) {
        if (reference_path.empty()) {
          std::cerr << "error: --customize requires --reference\n";
          return 2;
        }
        require_file(reference_path, "reference corpus");
        paths.require_wordnet();
        provider.emplace(parse_wordnet(paths.wn_index, paths.wn_data));
        const Corpus reference = preprocess_corpus(load_reviews(reference_path));
        cust.keyword = keyword;
        cust.min_sim = min_sim;
        pool = build_replacement_pool(reference, keyword, *provider, min_sim);
        std::cerr << "replacement pool: " << pool->size() << " nouns\n";
      }
      const LanguageModel model = load(model_path);

      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write: " + out_path);
      for (int i = 0; i < count; ++i) {
        std::string text = sample(model, temperature, max_len, seed + i);
        if (pool) {
          cust.seed = seed ^ static_cast<uint64_t>(i);
          text = customize(text, *pool, *provider, cust);
        }
        nlohmann::json j = {
            {"text", text},          {"stars", 5},       {"label", "generated"},
            {"temperature", temperature}, {"seed", seed + i},
        };
        if (!business_id.empty()) j["business_id"] = business_id;
        out << j.dump() << '\n';
      }
      std::cerr << "wrote " << count << " reviews at T=" << temperature << " to " << out_path
                << "\n";
    } else if (*detect_train) {
      require_file(fake_path, "fake corpus");
      require_file(real_path, "real corpus");
      const TrainConfig cfg = det_flags.resolve(overlay, seed);
      const Corpus fake = preprocess_corpus(load_reviews(fake_path));
      const Corpus real = preprocess_corpus(load_reviews(real_path));
      DetectorModel detector = train_detector(fake, real, cfg);
      detector = apply_min_length(detector, min_length);
      const std::string manifest = save_detector(detector, out_path);
      std::cerr << "detector saved; manifest: " << manifest << "\n";
    } else if (*detect_score) {
      require_file(detector_path, "detector manifest");
      if (input_path.empty() == text_arg.empty()) {
        std::cerr << "error: provide exactly one of --input or --text\n";
        return 2;
      }
      const DetectorModel detector = load_detector(detector_path);
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write: " + out_path);
        out = &file;
      }
      const auto emit = [&](const std::string& text) {
        const DetectionResult r = score(detector, text);
        const nlohmann::json j = {
            {"mean_ratio", r.mean_ratio},
            {"verdict", r.verdict == Verdict::kFake ? "fake" : "real"},
            {"chars_scored", r.chars_scored},
        };
        (*out) << j.dump() << '\n';
      };
      if (!input_path.empty()) {
        require_file(input_path, "input corpus");
        for (const auto& r : load_reviews(input_path).reviews) emit(r.text);
      } else {
        emit(text_arg);
      }
    } else if (*detect_eval) {
      require_file(detector_path, "detector manifest");
      require_file(input_path, "test corpus");
      DetectorModel detector = load_detector(detector_path);
      if (detect_eval->get_option("--min-length")->count() > 0) {
        detector = apply_min_length(detector, min_length);
      }
      const EvalReport report = evaluate(detector, load_reviews(input_path));
      write_json(report_to_json(report), out_path);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot write: " + csv_path);
        csv << "precision,recall,f_score,tp,fp,tn,fn,skipped_short,scored\n"
            << fmt_double(report.precision) << ',' << fmt_double(report.recall) << ','
            << fmt_double(report.f_score) << ',' << report.tp << ',' << report.fp << ','
            << report.tn << ',' << report.fn << ',' << report.skipped_short << ','
            << report.tp + report.fp + report.tn + report.fn << '\n';
      }
      std::cerr << "precision " << report.precision << ", recall " << report.recall << ", F "
                << report.f_score << " (skipped " << report.skipped_short << " short)\n";
    } else if (*plag_index) {
      require_file(corpus_path, "corpus");
      WinnowConfig cfg;
      cfg.k = winnow_k;
      cfg.w = winnow_w;
      const Corpus corpus = load_reviews(corpus_path);
      if (corpus.empty()) throw std::runtime_error("refusing to index an empty corpus");
      const PlagiarismIndex index = build_index(corpus, cfg);
      save_index(index, out_path);
      std::cerr << "indexed " << index.size() << " reviews (k=" << cfg.k << ", w=" << cfg.w
                << ") to " << out_path << "\n";
    } else if (*plag_check) {
      require_file(index_path, "index");
      require_file(input_path, "input corpus");
      const PlagiarismIndex index = load_index(index_path);
      if (index.empty()) throw std::runtime_error("the index is empty");
      const Corpus input = load_reviews(input_path);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write: " + out_path);
      out << "review,score,best_match\n";
      for (size_t i = 0; i < input.size(); ++i) {
        const std::string exclude = self_check ? std::to_string(i) : std::string{};
        const MatchResult m = max_similarity(input.reviews[i].text, index, exclude);
        out << i << ',' << fmt_double(m.score) << ',' << m.best_id << '\n';
      }
      std::cerr << "checked " << input.size() << " reviews against " << index.size()
                << " entries\n";
    } else if (*features_cmd) {
      require_file(input_path, "input corpus");
      paths.require_all();
      const WordnetSimilarity provider(parse_wordnet(paths.wn_index, paths.wn_data));
      const PosLexicons pos =
          PosLexicons::from_files(paths.verbs, paths.adjectives, paths.adverbs);
      const SentimentLexicon senti = SentimentLexicon::from_file(paths.sentiment);
      const CategoryLexicon cats = CategoryLexicon::from_file(paths.categories);
      const Corpus input = preprocess_corpus(load_reviews(input_path));
      const std::vector<std::string> names = feature_names(cats);

      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write: " + out_path);
      out << "label";
      for (const auto& n : names) out << ',' << n;
      out << '\n';
      for (const auto& review : input.reviews) {
        const FeatureVector fv =
            extract_features(review.text, provider, pos, senti, cats, subj_threshold);
        out << label_name(review.label);
        for (const double v : fv.values) out << ',' << fmt_double(v);
        out << '\n';
      }
      std::cerr << "wrote " << input.size() << " x " << names.size() << " feature matrix to "
                << out_path << "\n";
    } else if (*classify_train) {
      const FeatureTable table = read_feature_csv(features_path);
      const SvmConfig cfg{svm_lambda, svm_epochs, svm_lr, seed};
      const LinearClassifier clf = train_svm(table.rows, table.labels, cfg);
      save_classifier(clf, out_path);
      std::cerr << "trained classifier on " << table.rows.size() << " rows\n";
    } else if (*classify_eval) {
      const FeatureTable table = read_feature_csv(features_path);
      const SvmConfig cfg{svm_lambda, svm_epochs, svm_lr, seed};
      const EvalReport report = cross_validate(table.rows, table.labels, folds, seed, cfg);
      write_json(report_to_json(report), out_path);
      std::cerr << folds << "-fold CV: precision " << report.precision << ", recall "
                << report.recall << ", F " << report.f_score << "\n";
    } else if (*cross_temp) {
      require_file(corpus_path, "corpus");
      CrossTemperatureConfig cfg;
      cfg.grid = grid;
      cfg.attacker_count = attacker_count;
      cfg.defense_count = defense_count;
      cfg.test_count = test_count;
      cfg.seed = seed;
      cfg.attacker = xt_flags.resolve(overlay, seed);
      cfg.detector = cfg.attacker;
      if (detector_hidden > 0) cfg.detector.hidden = detector_hidden;
      if (detector_epochs > 0) cfg.detector.epochs = detector_epochs;
      const Corpus corpus = preprocess_corpus(load_reviews(corpus_path));
      const CrossTemperatureResult result = cross_temperature_matrix(corpus, cfg);
      write_matrix_csv(result, out_path);
      std::cerr << "mean F where T_train >= T_test: " << result.mean_where(true)
                << "; where T_train < T_test: " << result.mean_where(false) << "\n";
    } else if (*model_size) {
      require_file(corpus_path, "corpus");
      ModelSizeConfig cfg;
      cfg.hidden_ladder = ladder;
      cfg.attacker_count = attacker_count;
      cfg.defense_count = defense_count;
      cfg.test_count = test_count;
      cfg.temperature = temperature;
      cfg.seed = seed;
      cfg.attacker = ms_flags.resolve(overlay, seed);
      cfg.detector = cfg.attacker;
      if (detector_hidden > 0) cfg.detector.hidden = detector_hidden;
      if (detector_epochs > 0) cfg.detector.epochs = detector_epochs;
      const Corpus corpus = preprocess_corpus(load_reviews(corpus_path));
      const std::vector<ModelSizeRow> rows = model_size_tradeoff(corpus, cfg);
      write_tradeoff_csv(rows, out_path);
      for (const auto& row : rows) {
        std::cerr << "H=" << row.hidden << ": F=" << row.f_score << ", attacker train "
                  << row.train_seconds << "s\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
