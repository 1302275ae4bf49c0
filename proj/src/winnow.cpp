#include "revkit/winnow.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "revkit/io_util.hpp"

namespace revkit {

void WinnowConfig::validate() const {
  if (k < 1 || w < 1) throw std::invalid_argument("winnow config: k and w must be >= 1");
  if (hash_base == 0 || hash_modulus < 2) {
    throw std::invalid_argument("winnow config: bad hash parameters");
  }
}

std::string winnow_normalize(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  a %= m;
  b %= m;
  const uint64_t s = a + b;
  return s >= m ? s - m : s;
}

}  // namespace

uint64_t poly_hash(const std::string& s, const WinnowConfig& config) {
  uint64_t h = 0;
  for (const char c : s) {
    h = mulmod(h, config.hash_base, config.hash_modulus);
    h = addmod(h, static_cast<unsigned char>(c), config.hash_modulus);
  }
  return h;
}

FingerprintSet fingerprint(const std::string& text, const WinnowConfig& config) {
  config.validate();
  const std::string norm = winnow_normalize(text);

  FingerprintSet fp;
  if (norm.empty()) return fp;
  if (static_cast<int>(norm.size()) < config.k) {
    // Shorter than one k-gram: the whole normalized text is the fingerprint.
    fp.hashes.push_back(poly_hash(norm, config));
    fp.source_kgrams = 1;
    return fp;
  }

  const size_t k = static_cast<size_t>(config.k);
  const size_t n_grams = norm.size() - k + 1;
  fp.source_kgrams = n_grams;

  std::vector<uint64_t> hashes(n_grams);
  // base^(k-1) for rolling the leading character out.
  uint64_t high = 1;
  for (size_t i = 0; i + 1 < k; ++i) high = mulmod(high, config.hash_base, config.hash_modulus);

  uint64_t h = poly_hash(norm.substr(0, k), config);
  hashes[0] = h;
  for (size_t i = 1; i < n_grams; ++i) {
    const uint64_t out_c = static_cast<unsigned char>(norm[i - 1]);
    const uint64_t in_c = static_cast<unsigned char>(norm[i + k - 1]);
    h = addmod(h, config.hash_modulus - mulmod(out_c, high, config.hash_modulus),
               config.hash_modulus);
    h = mulmod(h, config.hash_base, config.hash_modulus);
    h = addmod(h, in_c, config.hash_modulus);
    hashes[i] = h;
  }

  const size_t w = static_cast<size_t>(config.w);
  std::vector<uint64_t> selected;
  if (n_grams < w) {
    // Fewer hashes than one window: keep the global minimum (rightmost tie).
    size_t best = 0;
    for (size_t i = 1; i < n_grams; ++i) {
      if (hashes[i] <= hashes[best]) best = i;
    }
    selected.push_back(hashes[best]);
  } else {
    size_t prev_pick = n_grams;  // sentinel: no pick recorded yet
    for (size_t start = 0; start + w <= n_grams; ++start) {
      size_t best = start;
      for (size_t i = start + 1; i < start + w; ++i) {
        if (hashes[i] <= hashes[best]) best = i;  // rightmost minimum
      }
      if (best != prev_pick) {
        selected.push_back(hashes[best]);
        prev_pick = best;
      }
    }
  }

  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  fp.hashes = std::move(selected);
  return fp;
}

double jaccard(const FingerprintSet& a, const FingerprintSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  size_t inter = 0;
  size_t ia = 0, ib = 0;
  while (ia < a.hashes.size() && ib < b.hashes.size()) {
    if (a.hashes[ia] == b.hashes[ib]) {
      ++inter;
      ++ia;
      ++ib;
    } else if (a.hashes[ia] < b.hashes[ib]) {
      ++ia;
    } else {
      ++ib;
    }
  }
  const size_t uni = a.hashes.size() + b.hashes.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

void PlagiarismIndex::add(const std::string& id, const std::string& text) {
  entries.emplace_back(id, fingerprint(text, config));
}

PlagiarismIndex build_index(const Corpus& corpus, const WinnowConfig& config) {
  config.validate();
  PlagiarismIndex index;
  index.config = config;
  index.entries.resize(corpus.size());
  const int64_t n = static_cast<int64_t>(corpus.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < n; ++i) {
    index.entries[static_cast<size_t>(i)] = {
        std::to_string(i), fingerprint(corpus.reviews[static_cast<size_t>(i)].text, config)};
  }
  return index;
}

MatchResult max_similarity(const std::string& review, const PlagiarismIndex& index,
                           const std::string& exclude_id) {
  if (index.empty()) throw std::invalid_argument("max_similarity: empty index");
  const FingerprintSet probe = fingerprint(review, index.config);

  std::vector<double> scores(index.size(), -1.0);
  const int64_t n = static_cast<int64_t>(index.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i) {
    const auto& [id, fp] = index.entries[static_cast<size_t>(i)];
    if (id == exclude_id) continue;
    scores[static_cast<size_t>(i)] = jaccard(probe, fp);
  }

  MatchResult best;
  best.score = -1.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > best.score) {
      best.score = scores[i];
      best.best_id = index.entries[i].first;
    }
  }
  if (best.score < 0.0) throw std::invalid_argument("max_similarity: no comparable entries");
  return best;
}

std::vector<double> max_similarity_scores(const Corpus& reviews, const PlagiarismIndex& index) {
  std::vector<double> scores(reviews.size());
  const int64_t n = static_cast<int64_t>(reviews.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < n; ++i) {
    scores[static_cast<size_t>(i)] =
        max_similarity(reviews.reviews[static_cast<size_t>(i)].text, index).score;
  }
  return scores;
}

namespace {

double nearest_rank(const std::vector<double>& sorted, double q) {
  const size_t n = sorted.size();
  const size_t rank = static_cast<size_t>(std::ceil(q * static_cast<double>(n)));
  return sorted[std::max<size_t>(rank, 1) - 1];
}

}  // namespace

QuantileReport score_distribution(const Corpus& reviews, const PlagiarismIndex& index) {
  if (reviews.empty()) throw std::invalid_argument("score_distribution: empty corpus");
  std::vector<double> scores = max_similarity_scores(reviews, index);
  std::sort(scores.begin(), scores.end());
  return {nearest_rank(scores, 0.25), nearest_rank(scores, 0.5), nearest_rank(scores, 0.75)};
}

namespace {
constexpr char kIndexMagic[5] = "RVPI";
constexpr uint32_t kIndexVersion = 1;
}  // namespace

void save_index(const PlagiarismIndex& index, const std::string& path) {
  io::ByteWriter w;
  w.bytes(std::string(kIndexMagic, 4));
  w.u32(kIndexVersion);
  w.u32(static_cast<uint32_t>(index.config.k));
  w.u32(static_cast<uint32_t>(index.config.w));
  w.u64(index.config.hash_base);
  w.u64(index.config.hash_modulus);
  w.u64(index.entries.size());
  for (const auto& [id, fp] : index.entries) {
    w.u32(static_cast<uint32_t>(id.size()));
    w.bytes(id);
    w.u64(fp.source_kgrams);
    w.u64(fp.hashes.size());
    for (const uint64_t h : fp.hashes) w.u64(h);
  }
  w.write_file(path);
}

PlagiarismIndex load_index(const std::string& path) {
  io::ByteReader r = io::ByteReader::from_file(path);
  if (r.bytes(4) != std::string(kIndexMagic, 4)) {
    throw std::runtime_error(path + ": bad magic, not a plagiarism index");
  }
  const uint32_t version = r.u32();
  if (version != kIndexVersion) {
    throw std::runtime_error(path + ": unsupported index version " + std::to_string(version));
  }
  PlagiarismIndex index;
  index.config.k = static_cast<int>(r.u32());
  index.config.w = static_cast<int>(r.u32());
  index.config.hash_base = r.u64();
  index.config.hash_modulus = r.u64();
  index.config.validate();
  const uint64_t count = r.u64();
  index.entries.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    const uint32_t id_len = r.u32();
    std::string id = r.bytes(id_len);
    FingerprintSet fp;
    fp.source_kgrams = r.u64();
    const uint64_t hashes = r.u64();
    fp.hashes.reserve(hashes);
    for (uint64_t j = 0; j < hashes; ++j) fp.hashes.push_back(r.u64());
    if (!std::is_sorted(fp.hashes.begin(), fp.hashes.end())) {
      throw std::runtime_error(path + ": corrupt index, hashes not sorted");
    }
    index.entries.emplace_back(std::move(id), std::move(fp));
  }
  if (r.remaining() != 0) throw std::runtime_error(path + ": trailing bytes in index file");
  return index;
}

}  // namespace revkit
