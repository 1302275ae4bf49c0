#include "revkit/vocab.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "revkit/corpus.hpp"

namespace revkit {

char Vocabulary::char_of(int id) const {
  if (id < 0 || id >= static_cast<int>(chars.size())) {
    throw std::out_of_range("char_of: id " + std::to_string(id) +
                            " has no character form");
  }
  return chars[static_cast<size_t>(id)];
}

Vocabulary Vocabulary::from_chars(std::string sorted_chars) {
  Vocabulary v;
  v.table_.fill(-1);
  v.chars = std::move(sorted_chars);
  for (size_t i = 0; i < v.chars.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(v.chars[i]);
    if (c < 32 || c > 126) {
      throw std::invalid_argument("vocabulary characters must be printable ASCII");
    }
    if (v.table_[c] >= 0) throw std::invalid_argument("duplicate vocabulary character");
    v.table_[c] = static_cast<int>(i);
  }
  v.sor_id = static_cast<int>(v.chars.size());
  v.eor_id = v.sor_id + 1;
  v.size = v.eor_id + 1;
  return v;
}

Vocabulary build_vocabulary(const Corpus& corpus) {
  if (corpus.empty()) throw std::invalid_argument("build_vocabulary: empty corpus");
  std::set<char> seen;
  for (const auto& r : corpus.reviews) {
    for (const char c : r.text) seen.insert(c);
  }
  return Vocabulary::from_chars(std::string(seen.begin(), seen.end()));
}

Vocabulary build_union_vocabulary(const Corpus& a, const Corpus& b) {
  if (a.empty() && b.empty()) {
    throw std::invalid_argument("build_union_vocabulary: both corpora empty");
  }
  std::set<char> seen;
  for (const auto* corpus : {&a, &b}) {
    for (const auto& r : corpus->reviews) {
      for (const char c : r.text) seen.insert(c);
    }
  }
  return Vocabulary::from_chars(std::string(seen.begin(), seen.end()));
}

}  // namespace revkit
