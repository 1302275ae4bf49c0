#include "revkit/wordnet.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace revkit {

namespace {

// Closed-class guard against noun/verb homographs ("can", "will", ...).
const std::unordered_set<std::string>& stoplist() {
  static const std::unordered_set<std::string> words = {
      "a",    "an",    "the",   "i",     "me",    "my",     "we",    "us",
      "our",  "you",   "your",  "he",    "him",   "his",    "she",   "her",
      "it",   "its",   "they",  "them",  "their", "this",   "that",  "these",
      "those", "who",  "whom",  "which", "what",  "of",     "in",    "on",
      "at",   "by",    "for",   "with",  "about", "against", "between", "into",
      "through", "during", "before", "after", "above", "below", "to",  "from",
      "up",   "down",  "out",   "off",   "over",  "under",  "and",   "or",
      "but",  "if",    "because", "as",  "until", "while",  "is",    "am",
      "are",  "was",   "were",  "be",    "been",  "being",  "have",  "has",
      "had",  "do",    "does",  "did",   "will",  "would",  "can",   "could",
      "should", "might", "must", "no",   "not",   "so",
  };
  return words;
}

std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct RawPointer {
  std::string symbol;
  int64_t target_offset;
  char pos;
  size_t line_start;  // byte offset of the line, for error messages
};

// Strict numeric field parse: the whole token must be consumed.
template <typename Int>
bool parse_int(const std::string& s, Int& out, int base = 10) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out, base);
  return ec == std::errc() && ptr == end && !s.empty();
}

}  // namespace

SynsetGraph parse_wordnet(const std::string& index_path, const std::string& data_path) {
  SynsetGraph graph;

  // Pass 1: data.noun -> synsets and raw hypernym pointers.
  std::ifstream data(data_path);
  if (!data) throw std::runtime_error("cannot open WordNet data file: " + data_path);

  std::vector<std::vector<RawPointer>> raw_pointers;
  std::string line;
  size_t byte_offset = 0;
  while (std::getline(data, line)) {
    const size_t line_start = byte_offset;
    byte_offset += line.size() + 1;
    if (line.empty() || line[0] == ' ') continue;  // license header

    std::istringstream ss(line);
    std::string offset_str, lex_filenum, ss_type, w_cnt_str;
    ss >> offset_str >> lex_filenum >> ss_type >> w_cnt_str;
    if (!ss) {
      throw std::runtime_error(data_path + ": malformed synset line at byte " +
                               std::to_string(line_start));
    }
    int64_t offset = 0;
    if (!parse_int(offset_str, offset)) {
      throw std::runtime_error(data_path + ": malformed synset offset \"" + offset_str +
                               "\" at byte " + std::to_string(line_start));
    }
    int word_count = 0;
    if (!parse_int(w_cnt_str, word_count, 16)) {  // w_cnt is hexadecimal
      throw std::runtime_error(data_path + ": malformed word count at byte " +
                               std::to_string(line_start));
    }

    Synset syn;
    syn.offset = offset;
    for (int i = 0; i < word_count; ++i) {
      std::string word, lex_id;
      ss >> word >> lex_id;
      if (!ss) {
        throw std::runtime_error(data_path + ": truncated word list at byte " +
                                 std::to_string(line_start));
      }
      std::replace(word.begin(), word.end(), '_', ' ');
      syn.lemmas.push_back(lowercase(word));
    }

    std::string p_cnt_str;
    ss >> p_cnt_str;
    int pointer_count = 0;
    if (!parse_int(p_cnt_str, pointer_count)) {  // p_cnt is decimal
      throw std::runtime_error(data_path + ": malformed pointer count at byte " +
                               std::to_string(line_start));
    }
    std::vector<RawPointer> pointers;
    for (int i = 0; i < pointer_count; ++i) {
      std::string symbol, target_str, pos, source_target;
      ss >> symbol >> target_str >> pos >> source_target;
      if (!ss) {
        throw std::runtime_error(data_path + ": truncated pointer list at byte " +
                                 std::to_string(line_start));
      }
      if ((symbol == "@" || symbol == "@i") && pos == "n") {
        int64_t target = 0;
        if (!parse_int(target_str, target)) {
          throw std::runtime_error(data_path + ": malformed pointer offset \"" + target_str +
                                   "\" at byte " + std::to_string(line_start));
        }
        pointers.push_back({symbol, target, 'n', line_start});
      }
    }

    if (graph.by_offset.count(offset)) {
      throw std::runtime_error(data_path + ": duplicate synset offset " + offset_str +
                               " at byte " + std::to_string(line_start));
    }
    graph.by_offset[offset] = static_cast<int>(graph.synsets.size());
    graph.synsets.push_back(std::move(syn));
    raw_pointers.push_back(std::move(pointers));
  }

  // Resolve pointers now that all offsets are known.
  for (size_t i = 0; i < raw_pointers.size(); ++i) {
    for (const auto& p : raw_pointers[i]) {
      const auto it = graph.by_offset.find(p.target_offset);
      if (it == graph.by_offset.end()) {
        throw std::runtime_error(data_path + ": dangling hypernym pointer to " +
                                 std::to_string(p.target_offset) + " at byte " +
                                 std::to_string(p.line_start));
      }
      graph.synsets[i].hypernyms.push_back(it->second);
    }
  }

  // Pass 2: index.noun -> lemma index.
  std::ifstream index(index_path);
  if (!index) throw std::runtime_error("cannot open WordNet index file: " + index_path);
  byte_offset = 0;
  while (std::getline(index, line)) {
    const size_t line_start = byte_offset;
    byte_offset += line.size() + 1;
    if (line.empty() || line[0] == ' ') continue;

    std::istringstream ss(line);
    std::string lemma, pos, synset_cnt_str, p_cnt_str;
    ss >> lemma >> pos >> synset_cnt_str >> p_cnt_str;
    if (!ss) {
      throw std::runtime_error(index_path + ": malformed index line at byte " +
                               std::to_string(line_start));
    }
    if (pos != "n") continue;
    int synset_cnt = 0, p_cnt = 0;
    if (!parse_int(synset_cnt_str, synset_cnt) || !parse_int(p_cnt_str, p_cnt)) {
      throw std::runtime_error(index_path + ": malformed counts at byte " +
                               std::to_string(line_start));
    }
    std::string skip;
    for (int i = 0; i < p_cnt; ++i) ss >> skip;  // pointer symbols
    ss >> skip >> skip;                          // sense_cnt, tagsense_cnt
    std::replace(lemma.begin(), lemma.end(), '_', ' ');
    std::vector<int>& entries = graph.lemma_index[lowercase(lemma)];
    for (int i = 0; i < synset_cnt; ++i) {
      std::string offset_str;
      ss >> offset_str;
      if (!ss) {
        throw std::runtime_error(index_path + ": truncated synset list at byte " +
                                 std::to_string(line_start));
      }
      int64_t offset = 0;
      if (!parse_int(offset_str, offset)) {
        throw std::runtime_error(index_path + ": malformed synset offset \"" + offset_str +
                                 "\" at byte " + std::to_string(line_start));
      }
      const auto it = graph.by_offset.find(offset);
      if (it == graph.by_offset.end()) {
        throw std::runtime_error(index_path + ": dangling synset offset " + offset_str +
                                 " at byte " + std::to_string(line_start));
      }
      entries.push_back(it->second);
    }
  }

  // Hypernym edges must be acyclic. Iterative three-color DFS.
  std::vector<int> color(graph.synsets.size(), 0);
  for (size_t root = 0; root < graph.synsets.size(); ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<int, size_t>> stack{{static_cast<int>(root), 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [node, edge] = stack.back();
      if (edge < graph.synsets[node].hypernyms.size()) {
        const int next = graph.synsets[node].hypernyms[edge++];
        if (color[next] == 1) {
          throw std::runtime_error(data_path + ": hypernym cycle through synset offset " +
                                   std::to_string(graph.synsets[next].offset));
        }
        if (color[next] == 0) {
          color[next] = 1;
          stack.push_back({next, 0});
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }
  }
  graph.finalize();
  return graph;
}

void SynsetGraph::finalize() {
  const int n = static_cast<int>(synsets.size());
  const int virtual_root = n;
  adjacency.assign(n + 1, {});
  for (int i = 0; i < n; ++i) {
    if (synsets[i].hypernyms.empty()) {
      adjacency[i].push_back(virtual_root);
      adjacency[virtual_root].push_back(i);
    }
    for (const int h : synsets[i].hypernyms) {
      adjacency[i].push_back(h);
      adjacency[h].push_back(i);
    }
  }
}

namespace {

// Shortest hypernym-path distance between any synset of a and any synset
// of b over the undirected hierarchy with its virtual root.
int synset_distance(const SynsetGraph& graph, const std::vector<int>& from,
                    const std::vector<int>& to) {
  const int n = static_cast<int>(graph.synsets.size());
  const std::vector<std::vector<int>>& adj = graph.adjacency;
  if (adj.size() != static_cast<size_t>(n) + 1) {
    throw std::logic_error("SynsetGraph::finalize() was not called");
  }

  std::vector<int> dist(n + 1, -1);
  std::deque<int> queue;
  for (const int s : from) {
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  std::vector<char> is_target(n, 0);
  for (const int s : to) is_target[s] = 1;
  for (const int s : from) {
    if (is_target[s]) return 0;
  }

  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    for (const int next : adj[node]) {
      if (dist[next] >= 0) continue;
      dist[next] = dist[node] + 1;
      if (next < n && is_target[next]) return dist[next];
      queue.push_back(next);
    }
  }
  return -1;  // disconnected (cannot happen once the virtual root joins all roots)
}

}  // namespace

double path_similarity(const SynsetGraph& graph, const std::string& word_a,
                       const std::string& word_b) {
  const std::string a = lowercase(word_a);
  const std::string b = lowercase(word_b);
  const auto ita = graph.lemma_index.find(a);
  if (ita == graph.lemma_index.end()) throw UnknownWordError(word_a);
  const auto itb = graph.lemma_index.find(b);
  if (itb == graph.lemma_index.end()) throw UnknownWordError(word_b);

  const int d = synset_distance(graph, ita->second, itb->second);
  if (d < 0) return 0.0;
  return 1.0 / (1.0 + static_cast<double>(d));
}

std::string noun_lemma(const SynsetGraph& graph, const std::string& token) {
  const std::string low = lowercase(token);
  if (low.empty() || stoplist().count(low)) return "";
  if (graph.has_lemma(low)) return low;
  // Plural stripping: "ies" -> "y", else "es", else "s".
  if (low.size() > 3 && low.ends_with("ies")) {
    const std::string cand = low.substr(0, low.size() - 3) + "y";
    if (graph.has_lemma(cand)) return cand;
  }
  if (low.size() > 2 && low.ends_with("es")) {
    const std::string cand = low.substr(0, low.size() - 2);
    if (graph.has_lemma(cand)) return cand;
  }
  if (low.size() > 1 && low.ends_with("s")) {
    const std::string cand = low.substr(0, low.size() - 1);
    if (graph.has_lemma(cand)) return cand;
  }
  return "";
}

bool is_noun(const SynsetGraph& graph, const std::string& token) {
  return !noun_lemma(graph, token).empty();
}

}  // namespace revkit
