#include "revkit/linguistic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace revkit {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

const std::unordered_set<std::string>& first_person_pronouns() {
  static const std::unordered_set<std::string> words = {
      "i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"};
  return words;
}

const std::unordered_set<std::string>& second_person_pronouns() {
  static const std::unordered_set<std::string> words = {"you", "your", "yours", "yourself",
                                                        "yourselves"};
  return words;
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  std::string current;
  for (size_t i = 0; i < text.size(); ++i) {
    current.push_back(text[i]);
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == text.size() || text[i + 1] == ' ')) {
      // Trim and keep non-empty sentences.
      const size_t b = current.find_first_not_of(' ');
      if (b != std::string::npos) {
        const size_t e = current.find_last_not_of(' ');
        sentences.push_back(current.substr(b, e - b + 1));
      }
      current.clear();
    }
  }
  const size_t b = current.find_first_not_of(' ');
  if (b != std::string::npos) {
    const size_t e = current.find_last_not_of(' ');
    sentences.push_back(current.substr(b, e - b + 1));
  }
  return sentences;
}

std::vector<std::string> tokenize(const std::string& sentence) {
  std::vector<std::string> tokens;
  std::string current;
  for (size_t i = 0; i < sentence.size(); ++i) {
    const char c = sentence[i];
    const bool internal_apostrophe = c == '\'' && !current.empty() && i + 1 < sentence.size() &&
                                     is_alnum(sentence[i + 1]);
    if (is_alnum(c) || internal_apostrophe) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double similarity_feature(const std::string& text) {
  const std::vector<std::string> sentences = split_sentences(text);
  if (sentences.size() < 2) return 0.0;

  std::vector<std::map<std::string, int>> counts(sentences.size());
  std::vector<double> norms(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) {
    for (const auto& tok : tokenize(sentences[i])) ++counts[i][tok];
    double sq = 0.0;
    for (const auto& [_, c] : counts[i]) sq += static_cast<double>(c) * c;
    norms[i] = std::sqrt(sq);
  }

  double best = 0.0;
  for (size_t i = 0; i < sentences.size(); ++i) {
    for (size_t j = i + 1; j < sentences.size(); ++j) {
      if (norms[i] == 0.0 || norms[j] == 0.0) continue;
      double dot = 0.0;
      for (const auto& [tok, c] : counts[i]) {
        const auto it = counts[j].find(tok);
        if (it != counts[j].end()) dot += static_cast<double>(c) * it->second;
      }
      best = std::max(best, dot / (norms[i] * norms[j]));
    }
  }
  return best;
}

std::array<double, 4> structural_features(const std::string& text) {
  const std::vector<std::string> tokens = tokenize(text);
  const std::vector<std::string> sentences = split_sentences(text);
  if (tokens.empty()) return {0.0, 0.0, 0.0, 0.0};

  double char_total = 0.0;
  for (const auto& t : tokens) char_total += static_cast<double>(t.size());
  const double words = static_cast<double>(tokens.size());
  const double sents = static_cast<double>(sentences.size());
  return {words, sents, sents > 0 ? words / sents : 0.0, char_total / words};
}

SentimentLexicon SentimentLexicon::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sentiment lexicon: " + path);
  SentimentLexicon lex;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected word<TAB>pos<TAB>neg");
    }
    const std::string word = lowercase(line.substr(0, t1));
    double pos = 0.0, neg = 0.0;
    try {
      pos = std::stod(line.substr(t1 + 1, t2 - t1 - 1));
      neg = std::stod(line.substr(t2 + 1));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed scores");
    }
    if (pos < 0.0 || neg < 0.0 || pos + neg > 1.0 + 1e-12) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": scores must be >= 0 with sum <= 1");
    }
    lex.entries[word] = {pos, neg};
  }
  return lex;
}

CategoryLexicon CategoryLexicon::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open category lexicon: " + path);
  CategoryLexicon lex;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": malformed category header");
      }
      const std::string name = line.substr(1, line.size() - 2);
      for (const auto& c : lex.categories) {
        if (c.name == name) {
          throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                   ": duplicate category \"" + name + "\"");
        }
      }
      lex.categories.push_back({name, {}, {}});
      continue;
    }
    if (lex.categories.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": entry before any [category] header");
    }
    const std::string entry = lowercase(line);
    if (entry.back() == '*') {
      lex.categories.back().prefixes.push_back(entry.substr(0, entry.size() - 1));
    } else {
      lex.categories.back().words.insert(entry);
    }
  }
  return lex;
}

PosLexicons PosLexicons::from_files(const std::string& verbs_path,
                                    const std::string& adjectives_path,
                                    const std::string& adverbs_path) {
  const auto read_list = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open word list: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty() && line[0] != '#') words.insert(lowercase(line));
    }
    return words;
  };
  PosLexicons pos;
  pos.verbs = read_list(verbs_path);
  pos.adjectives = read_list(adjectives_path);
  pos.adverbs = read_list(adverbs_path);
  return pos;
}

std::array<double, 6> syntactic_features(const std::string& text,
                                         const SimilarityProvider& provider,
                                         const PosLexicons& pos) {
  const std::vector<std::string> tokens = tokenize(text);
  if (tokens.empty()) return {0, 0, 0, 0, 0, 0};

  double nouns = 0, verbs = 0, adjectives = 0, adverbs = 0, first = 0, second = 0;
  for (const auto& tok : tokens) {
    if (provider.is_noun(tok)) ++nouns;
    if (pos.verbs.count(tok)) ++verbs;
    if (pos.adjectives.count(tok)) ++adjectives;
    if (pos.adverbs.count(tok)) ++adverbs;
    if (first_person_pronouns().count(tok)) ++first;
    if (second_person_pronouns().count(tok)) ++second;
  }
  const double n = static_cast<double>(tokens.size());
  return {nouns / n, verbs / n, adjectives / n, adverbs / n, first / n, second / n};
}

std::array<double, 4> semantic_features(const std::string& text, const SentimentLexicon& lexicon,
                                        double subjectivity_threshold) {
  const std::vector<std::string> tokens = tokenize(text);
  if (tokens.empty()) return {0, 0, 0, 0};

  double subjective = 0, objective = 0, positive = 0, negative = 0;
  for (const auto& tok : tokens) {
    const auto it = lexicon.entries.find(tok);
    if (it == lexicon.entries.end()) continue;
    const auto [pos, neg] = it->second;
    if (pos + neg >= subjectivity_threshold) ++subjective;
    else ++objective;
    if (pos > neg && pos > 0.0) ++positive;
    if (neg > pos && neg > 0.0) ++negative;
  }
  const double n = static_cast<double>(tokens.size());
  return {subjective / n, objective / n, positive / n, negative / n};
}

std::vector<double> category_features(const std::string& text, const CategoryLexicon& lexicon) {
  const std::vector<std::string> tokens = tokenize(text);
  std::vector<double> out(lexicon.categories.size(), 0.0);
  if (tokens.empty()) return out;

  for (size_t ci = 0; ci < lexicon.categories.size(); ++ci) {
    const auto& cat = lexicon.categories[ci];
    double hits = 0;
    for (const auto& tok : tokens) {
      bool match = cat.words.count(tok) > 0;
      for (size_t pi = 0; !match && pi < cat.prefixes.size(); ++pi) {
        match = tok.size() >= cat.prefixes[pi].size() &&
                tok.compare(0, cat.prefixes[pi].size(), cat.prefixes[pi]) == 0;
      }
      if (match) ++hits;
    }
    out[ci] = hits / static_cast<double>(tokens.size());
  }
  return out;
}

std::vector<std::string> feature_names(const CategoryLexicon& categories) {
  std::vector<std::string> names = {
      "max_sentence_similarity", "word_count",       "sentence_count",
      "avg_sentence_length",     "avg_word_length",  "pct_nouns",
      "pct_verbs",               "pct_adjectives",   "pct_adverbs",
      "pct_first_person",        "pct_second_person", "pct_subjective",
      "pct_objective",           "pct_positive",     "pct_negative",
  };
  for (const auto& c : categories.categories) names.push_back("cat_" + c.name);
  return names;
}

FeatureVector extract_features(const std::string& text, const SimilarityProvider& provider,
                               const PosLexicons& pos, const SentimentLexicon& sentiment,
                               const CategoryLexicon& categories,
                               double subjectivity_threshold) {
  FeatureVector fv;
  fv.values.reserve(15 + categories.categories.size());
  fv.values.push_back(similarity_feature(text));
  for (const double v : structural_features(text)) fv.values.push_back(v);
  for (const double v : syntactic_features(text, provider, pos)) fv.values.push_back(v);
  for (const double v : semantic_features(text, sentiment, subjectivity_threshold)) {
    fv.values.push_back(v);
  }
  for (const double v : category_features(text, categories)) fv.values.push_back(v);
  return fv;
}

}  // namespace revkit
