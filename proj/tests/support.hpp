// Seeded generators and small reference models shared by the test files.
// The models are written from the group definitions and do not call the
// library's oracles.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mgw/words.hpp"

namespace testing {

inline constexpr std::uint64_t kSeed = 20240101;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kSeed) : engine_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Unreduced letter string: arbitrary +-i, so cancellations happen often.
inline std::vector<mgw::Letter> raw_letters(Rng& rng, int arity, int max_len) {
  std::vector<mgw::Letter> out(static_cast<std::size_t>(rng.uniform(0, max_len)));
  for (auto& x : out) {
    const int i = rng.uniform(1, arity);
    x = static_cast<mgw::Letter>(rng.uniform(0, 1) ? i : -i);
  }
  return out;
}

inline mgw::Word random_word(Rng& rng, int arity, int max_len) {
  const auto raw = raw_letters(rng, arity, max_len);
  return mgw::free_reduce(arity, raw);
}

// Naive stack reduction over plain ints.
inline std::vector<int> stack_reduce(const std::vector<int>& raw) {
  std::vector<int> out;
  for (const int x : raw) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

inline std::vector<int> as_ints(const mgw::Word& w) {
  return {w.letters().begin(), w.letters().end()};
}

// Lamplighter Z/2 wr Z as (lit lamps, cursor); a toggles the lamp at the
// cursor, t moves the cursor right.
struct LampState {
  std::set<long> lit;
  long cursor = 0;
  bool identity() const { return lit.empty() && cursor == 0; }
};

inline LampState lamp_eval(const mgw::Word& w) {
  LampState s;
  for (const mgw::Letter x : w.letters()) {
    if (x == 1 || x == -1) {
      if (!s.lit.erase(s.cursor)) s.lit.insert(s.cursor);
    } else {
      s.cursor += x > 0 ? 1 : -1;
    }
  }
  return s;
}

// Heisenberg group as upper unitriangular integer matrices (a, b, c) with
// x = (1,0,0), y = (0,1,0) and (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
struct Heis {
  long a = 0, b = 0, c = 0;
  Heis operator*(const Heis& o) const { return {a + o.a, b + o.b, c + o.c + a * o.b}; }
  Heis inv() const { return {-a, -b, -c + a * b}; }
};

inline Heis heis_eval(const mgw::Word& w) {
  Heis h;
  for (const mgw::Letter x : w.letters()) {
    Heis g = (x == 1 || x == -1) ? Heis{1, 0, 0} : Heis{0, 1, 0};
    if (x < 0) g = g.inv();
    h = h * g;
  }
  return h;
}

// Finitary permutation of Z with a shift, evaluated on a window of points.
// sigma = transposition (0 1), s = shift by one; composition convention is
// checked only through identity tests, which do not depend on it.
inline bool symshift_is_identity(const mgw::Word& w) {
  const long span = static_cast<long>(w.size()) + 4;
  for (long p = -span; p <= span; ++p) {
    long q = p;
    for (const mgw::Letter x : w.letters()) {
      if (x == 1 || x == -1) {
        if (q == 0) {
          q = 1;
        } else if (q == 1) {
          q = 0;
        }
      } else {
        q += x > 0 ? 1 : -1;
      }
    }
    if (q != p) return false;
  }
  return true;
}

// Reference tree action of the Grigorchuk generators, straight from the
// defining recursions: b(0v) = 0 beta(alpha_0)(v), b(1v) = 1 b'(v) and
// likewise for c, d with zeta and delta. The first symbol of a vertex is
// the top level.
inline bool grig_section_is_a(char gen, int symbol) {
  // beta = (a, a, e), zeta = (a, e, a), delta = (e, a, a)
  static const bool table[3][3] = {{true, true, false}, {true, false, true}, {false, true, true}};
  return table[gen - 'b'][symbol];
}

inline std::string grig_apply(const std::string& alpha_digits, char gen, std::string v) {
  if (v.empty()) return v;
  if (gen == 'a') {
    v[0] = v[0] == '0' ? '1' : '0';
    return v;
  }
  for (std::size_t level = 0; level + 1 < v.size(); ++level) {
    if (v[level] == '0') {
      if (grig_section_is_a(gen, alpha_digits[level] - '0')) {
        v[level + 1] = v[level + 1] == '0' ? '1' : '0';
      }
      return v;
    }
  }
  return v;
}

// Applies letters first to last.
inline std::string grig_act(const std::string& alpha_digits, const std::string& word,
                            std::string v) {
  for (const char g : word) v = grig_apply(alpha_digits, g, v);
  return v;
}

inline bool grig_acts_trivially(const std::string& alpha_digits, const std::string& word,
                                int depth) {
  for (std::uint32_t bits = 0; bits < (1u << depth); ++bits) {
    std::string v(static_cast<std::size_t>(depth), '0');
    for (int i = 0; i < depth; ++i) v[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? '1' : '0';
    if (grig_act(alpha_digits, word, v) != v) return false;
  }
  return true;
}

inline std::string expand_sequence(const std::string& prefix, const std::string& tail,
                                   std::size_t n) {
  std::string out = prefix;
  while (out.size() < n) out += tail;
  return out.substr(0, n);
}

// All strings over {a,b,c,d} of length <= n with no letter repeated twice in
// a row (every generator is an involution).
inline std::vector<std::string> grig_strings(int n) {
  std::vector<std::string> out{""};
  std::vector<std::string> frontier{""};
  for (int len = 1; len <= n; ++len) {
    std::vector<std::string> next;
    for (const auto& s : frontier) {
      for (const char g : std::string("abcd")) {
        if (!s.empty() && s.back() == g) continue;
        next.push_back(s + g);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace testing
