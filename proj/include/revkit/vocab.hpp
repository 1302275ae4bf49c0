#pragma once

#include <array>
#include <string>

namespace revkit {

struct Corpus;

// Character vocabulary over a preprocessed corpus. Regular characters get
// ids 0..V-3 sorted by character code; the start/end-of-review delimiter
// tokens take the last two ids. Delimiters carry no character form: they
// exist only as token ids.
struct Vocabulary {
  std::string chars;  // non-delimiter characters in id order
  int sor_id = 0;
  int eor_id = 0;
  int size = 0;

  int id_of(char c) const { return table_[static_cast<unsigned char>(c)]; }
  bool contains(char c) const { return id_of(c) >= 0; }
  char char_of(int id) const;
  bool is_delimiter(int id) const { return id == sor_id || id == eor_id; }

  static Vocabulary from_chars(std::string sorted_chars);

 private:
  std::array<int, 256> table_{};
};

Vocabulary build_vocabulary(const Corpus& corpus);
// Union alphabet over both corpora; used by the dual-model detector so
// either side can score a review from either distribution.
Vocabulary build_union_vocabulary(const Corpus& a, const Corpus& b);

}  // namespace revkit
