#include "mgw/grigorchuk.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "mgw/error.hpp"
#include "mgw/oracles.hpp"

namespace mgw::grig {

namespace {

// b, c, d are coded 1, 2, 3 so that the Klein table is XOR.
int code(char ch) { return ch - 'a'; }

// Section below 0 of b (resp. c, d) is e exactly when the symbol is 2
// (resp. 1, 0); otherwise it is a.
bool section_trivial(int letter, int symbol) { return symbol == 3 - letter; }

int read(const TernarySequence& alpha, std::size_t pos, ReadTracker* reads) {
  if (reads != nullptr) reads->note(pos);
  return alpha.at(pos);
}

GrigWord cyclic_reduce(const GrigWord& w) {
  std::string s = w.letters();
  while (s.size() >= 2) {
    const char first = s.front();
    const char last = s.back();
    if (first == 'a' && last == 'a') {
      s = s.substr(1, s.size() - 2);
    } else if (first != 'a' && last != 'a') {
      s = GrigWord::reduce(std::string(1, last) + s.substr(0, s.size() - 1)).letters();
    } else {
      break;
    }
  }
  return GrigWord::reduce(s);
}

}  // namespace

GrigWord GrigWord::reduce(std::string_view raw) {
  GrigWord out;
  if (raw == "1") return out;
  std::string& st = out.letters_;
  st.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char ch = raw[i];
    if (ch == 'a') {
      if (!st.empty() && st.back() == 'a') {
        st.pop_back();
      } else {
        st.push_back('a');
      }
    } else if (ch >= 'b' && ch <= 'd') {
      if (!st.empty() && st.back() != 'a') {
        const int merged = code(ch) ^ code(st.back());
        st.pop_back();
        if (merged != 0) st.push_back(static_cast<char>('a' + merged));
      } else {
        st.push_back(ch);
      }
    } else {
      throw ParseError(std::string("unknown letter '") + ch + "' (expected a, b, c, d)", i);
    }
  }
  return out;
}

GrigWord GrigWord::inverse() const {
  GrigWord out;
  out.letters_.assign(letters_.rbegin(), letters_.rend());
  return out;
}

GrigWord GrigWord::operator*(const GrigWord& rhs) const {
  return reduce(letters_ + rhs.letters_);
}

GrigWord GrigWord::power(std::uint64_t exponent) const {
  GrigWord base = *this;
  GrigWord acc;
  while (exponent > 0) {
    if (exponent & 1U) acc = acc * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return acc;
}

std::size_t GrigWord::a_count() const {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), 'a'));
}

Decomposition wreath_decompose_at(const GrigWord& w, const TernarySequence& alpha,
                                  std::size_t position, ReadTracker* reads) {
  std::string sec[2];
  int vertex[2] = {0, 1};
  int symbol = -1;
  for (const char ch : w.letters()) {
    if (ch == 'a') {
      vertex[0] ^= 1;
      vertex[1] ^= 1;
      continue;
    }
    if (symbol < 0) symbol = read(alpha, position, reads);
    for (int t = 0; t < 2; ++t) {
      if (vertex[t] == 1) {
        sec[t].push_back(ch);
      } else if (!section_trivial(code(ch), symbol)) {
        sec[t].push_back('a');
      }
    }
  }
  return {GrigWord::reduce(sec[0]), GrigWord::reduce(sec[1]), w.root_swap()};
}

Decomposition wreath_decompose(const GrigWord& w, const TernarySequence& alpha) {
  return wreath_decompose_at(w, alpha, 0, nullptr);
}

namespace {

class TrivialitySearch {
 public:
  TrivialitySearch(const TernarySequence& alpha, std::uint64_t budget, ReadTracker* reads)
      : alpha_(alpha), budget_(budget), reads_(reads) {}

  // 1 trivial, 0 nontrivial, -1 budget exhausted.
  int run(const GrigWord& w, std::size_t pos) {
    if (++nodes_ > budget_) return -1;
    if (w.empty()) return 1;
    if (w.root_swap()) return 0;
    if (w.size() == 1) return single_letter(code(w.letters()[0]), pos);
    const Decomposition d = wreath_decompose_at(w, alpha_, pos, reads_);
    const int first = run(d.first, pos + 1);
    if (first != 1) return first;
    return run(d.second, pos + 1);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  // x = (T(alpha_pos), x_{tau alpha}): trivial iff T is e at every later
  // position; the shifts of alpha form a finite cycle, so scan one lap.
  int single_letter(int letter, std::size_t pos) {
    std::vector<bool> seen(alpha_.state_count(), false);
    for (std::size_t i = pos;; ++i) {
      const std::size_t st = alpha_.state(i);
      if (seen[st]) return 1;
      seen[st] = true;
      if (!section_trivial(letter, read(alpha_, i, reads_))) return 0;
    }
  }

  const TernarySequence& alpha_;
  std::uint64_t budget_;
  ReadTracker* reads_;
  std::uint64_t nodes_ = 0;
};

Verdict trivial_at(const TernarySequence& alpha, const GrigWord& w, std::size_t pos,
                   std::uint64_t budget, ReadTracker* reads) {
  TrivialitySearch search(alpha, budget, reads);
  switch (search.run(w, pos)) {
    case 1:
      return Verdict::trivial();
    case 0:
      return Verdict::nontrivial();
    default:
      return Verdict::unknown("section recursion exceeded " + std::to_string(budget) +
                              " nodes");
  }
}

}  // namespace

Verdict is_trivial(const TernarySequence& alpha, const GrigWord& w, std::uint64_t budget,
                   ReadTracker* reads) {
  if (budget == 0) throw UsageError("triviality budget must be positive");
  return trivial_at(alpha, w, 0, budget, reads);
}

std::string act(const TernarySequence& alpha, const GrigWord& w, std::string_view vertex) {
  std::string v(vertex);
  for (const char ch : v) {
    if (ch != '0' && ch != '1') throw UsageError("tree vertex must be a binary string");
  }
  if (v.empty()) return v;
  for (const char ch : w.letters()) {
    if (ch == 'a') {
      v[0] = v[0] == '0' ? '1' : '0';
      continue;
    }
    std::size_t j = 0;
    while (j < v.size() && v[j] == '1') ++j;
    if (j + 1 < v.size() && !section_trivial(code(ch), alpha.at(j))) {
      v[j + 1] = v[j + 1] == '0' ? '1' : '0';
    }
  }
  return v;
}

namespace {

// Recursion graph of the order algorithm. Node values are exponents e with
// order 2^e: a root-fixing word has e = max over its sections (lcm of powers
// of two), a root-swapping word has e = 1 + e(w0 w1).
class OrderGraph {
 public:
  OrderGraph(const TernarySequence& alpha, std::uint64_t budget, ReadTracker* reads)
      : alpha_(alpha), budget_(budget), reads_(reads) {}

  // Returns false if the node budget ran out.
  bool build(const GrigWord& root) {
    intern(cyclic_reduce(root), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_.size() > budget_) return false;
      expand(i);
    }
    return nodes_.size() <= budget_;
  }

  // Exponent of the root, or nullopt if some reachable cycle doubles.
  std::optional<int> root_exponent() {
    const std::size_t n = nodes_.size();
    std::vector<long> index(n, -1);
    std::vector<long> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<long> comp(n, -1);
    std::vector<int> value(n, 0);
    long counter = 0;
    long comps = 0;
    bool infinite = false;

    struct Frame {
      std::size_t node;
      std::size_t edge;
    };
    std::vector<Frame> call;
    for (std::size_t start = 0; start < n && !infinite; ++start) {
      if (index[start] >= 0) continue;
      call.push_back({start, 0});
      index[start] = low[start] = counter++;
      stack.push_back(start);
      on_stack[start] = true;
      while (!call.empty() && !infinite) {
        Frame& f = call.back();
        const auto& edges = nodes_[f.node].edges;
        if (f.edge < edges.size()) {
          const std::size_t to = edges[f.edge].first;
          ++f.edge;
          if (index[to] < 0) {
            index[to] = low[to] = counter++;
            stack.push_back(to);
            on_stack[to] = true;
            call.push_back({to, 0});
          } else if (on_stack[to]) {
            low[f.node] = std::min(low[f.node], index[to]);
          }
          continue;
        }
        const std::size_t v = f.node;
        call.pop_back();
        if (!call.empty()) {
          low[call.back().node] = std::min(low[call.back().node], low[v]);
        }
        if (low[v] != index[v]) continue;
        // v roots a strongly connected component; successors outside it are done.
        std::vector<std::size_t> members;
        std::size_t u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = false;
          comp[u] = comps;
          members.push_back(u);
        } while (u != v);
        int best = 0;
        for (const std::size_t m : members) {
          best = std::max(best, nodes_[m].leaf);
          for (const auto& [to, weight] : nodes_[m].edges) {
            if (comp[to] == comps) {
              if (weight == 1) infinite = true;
            } else {
              best = std::max(best, value[to] + weight);
            }
          }
        }
        for (const std::size_t m : members) value[m] = best;
        ++comps;
      }
    }
    if (infinite) return std::nullopt;
    return value[0];
  }

 private:
  struct Node {
    std::size_t state;
    std::size_t position;
    GrigWord word;
    int leaf = 0;  // exponent contributed without recursion
    std::vector<std::pair<std::size_t, int>> edges;
  };

  std::size_t intern(const GrigWord& w, std::size_t position) {
    const std::size_t st = alpha_.state(position);
    std::string key = std::to_string(st) + ':' + w.letters();
    auto [it, inserted] = ids_.try_emplace(std::move(key), nodes_.size());
    if (inserted) nodes_.push_back({st, position, w, 0, {}});
    return it->second;
  }

  void expand(std::size_t i) {
    const GrigWord w = nodes_[i].word;
    const std::size_t pos = nodes_[i].position;
    if (w.empty()) return;
    if (w.size() == 1) {
      if (w.letters()[0] == 'a') {
        nodes_[i].leaf = 1;
      } else {
        const Verdict v = trivial_at(alpha_, w, pos, kDefaultBudget, reads_);
        nodes_[i].leaf = v.is_trivial() ? 0 : 1;
      }
      return;
    }
    const Decomposition d = wreath_decompose_at(w, alpha_, pos, reads_);
    if (d.swap) {
      const std::size_t child = intern(cyclic_reduce(d.first * d.second), pos + 1);
      nodes_[i].edges.push_back({child, 1});
    } else {
      const std::size_t c0 = intern(cyclic_reduce(d.first), pos + 1);
      const std::size_t c1 = intern(cyclic_reduce(d.second), pos + 1);
      nodes_[i].edges.push_back({c0, 0});
      if (c1 != c0) nodes_[i].edges.push_back({c1, 0});
    }
  }

  const TernarySequence& alpha_;
  std::uint64_t budget_;
  ReadTracker* reads_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> ids_;
};

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    primes.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) primes.push_back(m);
  return primes;
}

}  // namespace

OrderResult order(const TernarySequence& alpha, const GrigWord& w, std::uint64_t budget,
                  ReadTracker* reads) {
  if (budget == 0) throw UsageError("order budget must be positive");
  OrderGraph graph(alpha, budget, reads);
  if (!graph.build(w)) return OrderResult::exceeds();
  const auto exponent = graph.root_exponent();
  if (!exponent) return OrderResult::exceeds(true);
  if (*exponent >= 63) return OrderResult::exceeds();
  const std::uint64_t m = std::uint64_t{1} << *exponent;
  if (m > budget) return OrderResult::exceeds();

  if (!is_trivial(alpha, w.power(m), kDefaultBudget, reads).is_trivial()) {
    throw std::logic_error("order recursion disagrees with triviality check for " +
                           w.text());
  }
  for (const std::uint64_t p : prime_factors(m)) {
    if (is_trivial(alpha, w.power(m / p), kDefaultBudget, reads).is_trivial()) {
      throw std::logic_error("order of " + w.text() + " is not minimal");
    }
  }
  return OrderResult::finite(m);
}

LevelAction::LevelAction(const TernarySequence& alpha, int depth, ReadTracker* reads)
    : depth_(depth) {
  if (depth < 1 || depth > 20) throw UsageError("level depth must be in [1, 20]");
  const std::uint32_t size = 1U << depth;
  std::vector<int> symbols(static_cast<std::size_t>(depth), 0);
  for (int j = 0; j + 1 < depth; ++j) {
    symbols[static_cast<std::size_t>(j)] = read(alpha, static_cast<std::size_t>(j), reads);
  }
  for (auto& g : generators_) g.resize(size);
  for (std::uint32_t v = 0; v < size; ++v) {
    generators_[0][v] = v ^ 1U;
    int j = 0;
    while (j < depth && ((v >> j) & 1U) != 0) ++j;
    for (int x = 1; x <= 3; ++x) {
      std::uint32_t image = v;
      if (j + 1 < depth && !section_trivial(x, symbols[static_cast<std::size_t>(j)])) {
        image ^= 1U << (j + 1);
      }
      generators_[x][v] = image;
    }
  }
}

std::vector<std::uint32_t> LevelAction::permutation(const GrigWord& w) const {
  const std::uint32_t size = 1U << depth_;
  std::vector<std::uint32_t> cur(size);
  for (std::uint32_t v = 0; v < size; ++v) cur[v] = v;
  for (const char ch : w.letters()) {
    const auto& g = generators_[code(ch)];
    for (auto& x : cur) x = g[x];
  }
  return cur;
}

std::uint64_t LevelAction::fingerprint(const GrigWord& w) const {
  const auto perm = permutation(w);
  return fnv1a_values(std::span<const std::uint32_t>(perm));
}

}  // namespace mgw::grig
