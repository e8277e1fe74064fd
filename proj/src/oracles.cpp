#include "mgw/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "mgw/closure.hpp"
#include "mgw/error.hpp"
#include "mgw/families.hpp"

namespace mgw {

std::string to_string(Marking marking) { return marking == Marking::G4 ? "G4" : "L2"; }

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::optional<std::uint64_t> GroupOracle::fingerprint(const Word&) const {
  return std::nullopt;
}

OrderResult GroupOracle::order(const Word& w, std::uint64_t budget) const {
  Word power(w.arity());
  for (std::uint64_t m = 1; m <= budget; ++m) {
    power = power * w;
    const Verdict v = decide(power);
    if (v.is_trivial()) return OrderResult::finite(m);
    if (v.is_unknown()) return OrderResult::exceeds();
  }
  return OrderResult::exceeds();
}

MarkedGroup::MarkedGroup(int arity, std::string spec, std::shared_ptr<const GroupOracle> impl)
    : arity_(arity), spec_(std::move(spec)), impl_(std::move(impl)) {
  if (arity < 1 || arity > kMaxArity) {
    throw UsageError("marked group arity " + std::to_string(arity) + " outside [1, 26]");
  }
  if (!impl_) throw UsageError("marked group needs an oracle");
}

void MarkedGroup::check(const Word& w) const {
  if (w.arity() != arity_) {
    throw UsageError("word of arity " + std::to_string(w.arity()) + " given to " + spec_ +
                     " (arity " + std::to_string(arity_) + ")");
  }
}

Verdict MarkedGroup::oracle(const Word& w) const {
  check(w);
  if (w.empty()) return Verdict::trivial();
  return impl_->decide(w);
}

Verdict MarkedGroup::equal(const Word& u, const Word& v) const {
  return oracle(u * v.inverse());
}

std::optional<std::uint64_t> MarkedGroup::fingerprint(const Word& w) const {
  check(w);
  return impl_->fingerprint(w);
}

OrderResult MarkedGroup::order(const Word& w, std::uint64_t budget) const {
  check(w);
  if (budget == 0) throw UsageError("order budget must be positive");
  if (w.empty()) return OrderResult::finite(1);
  return impl_->order(w, budget);
}

bool require_certified(const Verdict& v, const Word& w, const std::string& spec) {
  if (v.is_unknown()) {
    throw ComputeError("oracle of " + spec + " returned unknown on " + w.text() + " (" +
                       v.effort + ")");
  }
  return v.is_trivial();
}

namespace {

class RemarkOracle final : public GroupOracle {
 public:
  RemarkOracle(MarkedGroup base, std::vector<Word> marks)
      : base_(std::move(base)), marks_(std::move(marks)) {}

  Verdict decide(const Word& w) const override { return base_.oracle(image(w)); }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    return base_.fingerprint(image(w));
  }
  OrderResult order(const Word& w, std::uint64_t budget) const override {
    return base_.order(image(w), budget);
  }
  bool exact() const override { return base_.exact(); }

 private:
  Word image(const Word& w) const { return substitute(w, marks_); }

  MarkedGroup base_;
  std::vector<Word> marks_;
};

}  // namespace

MarkedGroup remark(const MarkedGroup& g, std::vector<Word> marks) {
  if (marks.size() < 2) throw UsageError("remark needs at least 2 marks");
  if (g.limit()) throw UsageError("limit groups only support ball-level queries");
  std::string spec = "remark(" + g.spec() + ";";
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (marks[i].arity() != g.arity()) {
      throw UsageError("mark " + marks[i].text() + " is not a word in the generators of " +
                       g.spec());
    }
    spec += (i > 0 ? "," : "") + marks[i].text();
  }
  spec += ")";
  const int arity = static_cast<int>(marks.size());
  return MarkedGroup(arity, std::move(spec),
                     std::make_shared<RemarkOracle>(g, std::move(marks)));
}

namespace {

std::uint64_t hash_longs(const std::vector<long>& v) {
  return fnv1a_values(std::span<const long>(v));
}

long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

long floor_div(long a, long m) { return (a - floor_mod(a, m)) / m; }

long checked_mul(long a, long b) {
  long out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ComputeError("exponent overflow");
  return out;
}

long checked_add(long a, long b) {
  long out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ComputeError("exponent overflow");
  return out;
}

class FreeOracle final : public GroupOracle {
 public:
  Verdict decide(const Word& w) const override {
    return w.empty() ? Verdict::trivial() : Verdict::nontrivial();
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    return fnv1a_values(w.letters());
  }
  OrderResult order(const Word& w, std::uint64_t) const override {
    return w.empty() ? OrderResult::finite(1) : OrderResult::exceeds(true);
  }
};

class AbelianOracle final : public GroupOracle {
 public:
  Verdict decide(const Word& w) const override {
    const auto s = exponent_sums(w);
    return std::all_of(s.begin(), s.end(), [](long x) { return x == 0; })
               ? Verdict::trivial()
               : Verdict::nontrivial();
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    return hash_longs(exponent_sums(w));
  }
  OrderResult order(const Word& w, std::uint64_t) const override {
    return decide(w).is_trivial() ? OrderResult::finite(1) : OrderResult::exceeds(true);
  }
};

class CyclicOracle final : public GroupOracle {
 public:
  explicit CyclicOracle(long k) : k_(k) {}

  Verdict decide(const Word& w) const override {
    return residue(w) == 0 ? Verdict::trivial() : Verdict::nontrivial();
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    const long r = residue(w);
    return fnv1a(&r, sizeof r);
  }
  OrderResult order(const Word& w, std::uint64_t budget) const override {
    const long r = residue(w);
    const auto m = static_cast<std::uint64_t>(k_ / std::gcd(r, k_));
    return m <= budget ? OrderResult::finite(m) : OrderResult::exceeds();
  }

 private:
  long residue(const Word& w) const { return floor_mod(exponent_sums(w)[0], k_); }

  long k_;
};

// (p, q, r) stands for x^p y^q z^r with z = [x, y] central; right
// multiplication by y^(+-1) adds +-p to r.
class HeisenbergOracle final : public GroupOracle {
 public:
  Verdict decide(const Word& w) const override {
    const auto n = normal_form(w);
    return n == std::vector<long>{0, 0, 0} ? Verdict::trivial() : Verdict::nontrivial();
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    return hash_longs(normal_form(w));
  }
  OrderResult order(const Word& w, std::uint64_t) const override {
    return decide(w).is_trivial() ? OrderResult::finite(1) : OrderResult::exceeds(true);
  }

 private:
  static std::vector<long> normal_form(const Word& w) {
    long p = 0, q = 0, r = 0;
    for (const Letter x : w.letters()) {
      switch (x) {
        case 1: ++p; break;
        case -1: --p; break;
        case 2: ++q; r += p; break;
        default: --q; r -= p; break;
      }
    }
    return {p, q, r};
  }
};

// Britton normal form a^e0 t^s1 a^r1 ... t^sk a^rk with r_i in [0, m) after
// t and in [0, n) after t^-1, and no pinch t^s a^e t^-s left.
class BaumslagSolitarOracle final : public GroupOracle {
 public:
  BaumslagSolitarOracle(long m, long n) : m_(m), n_(n) {}

  Verdict decide(const Word& w) const override {
    const auto nf = normal_form(w);
    return nf.size() == 1 && nf[0] == 0 ? Verdict::trivial() : Verdict::nontrivial();
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    return hash_longs(normal_form(w));
  }
  // Baumslag-Solitar groups are torsion-free.
  OrderResult order(const Word& w, std::uint64_t) const override {
    return decide(w).is_trivial() ? OrderResult::finite(1) : OrderResult::exceeds(true);
  }

 private:
  // Flattened as e0, s1, r1, s2, r2, ...
  std::vector<long> normal_form(const Word& w) const {
    long e0 = 0;
    std::vector<std::pair<int, long>> syllables;  // stored right to left
    const auto letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      const Letter x = *it;
      if (x == 1 || x == -1) {
        e0 = checked_add(e0, x);
        continue;
      }
      const int s = x > 0 ? 1 : -1;
      if (!syllables.empty() && syllables.back().first == -s) {
        const long divisor = s > 0 ? m_ : n_;
        if (e0 % divisor == 0) {
          const long factor = s > 0 ? n_ : m_;
          e0 = checked_add(checked_mul(e0 / divisor, factor), syllables.back().second);
          syllables.pop_back();
          continue;
        }
      }
      // t a^e = a^(qn) t a^r with e = qm + r; symmetrically for t^-1.
      const long mod = s > 0 ? m_ : n_;
      const long other = s > 0 ? n_ : m_;
      const long r = floor_mod(e0, mod);
      const long q = floor_div(e0, mod);
      syllables.emplace_back(s, r);
      e0 = checked_mul(q, other);
    }
    std::vector<long> out{e0};
    for (auto it = syllables.rbegin(); it != syllables.rend(); ++it) {
      out.push_back(it->first);
      out.push_back(it->second);
    }
    return out;
  }

  long m_;
  long n_;
};

// Element (lamps, cursor); a word acts by right multiplication from the
// identity: g1 toggles the lamp under the cursor, g2 moves the cursor.
class LamplighterOracle final : public GroupOracle {
 public:
  Verdict decide(const Word& w) const override {
    const auto nf = normal_form(w);
    return nf.size() == 1 && nf[0] == 0 ? Verdict::trivial() : Verdict::nontrivial();
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    return hash_longs(normal_form(w));
  }
  OrderResult order(const Word& w, std::uint64_t budget) const override {
    const auto nf = normal_form(w);
    if (nf[0] != 0) return OrderResult::exceeds(true);
    const std::uint64_t m = nf.size() == 1 ? 1 : 2;
    return m <= budget ? OrderResult::finite(m) : OrderResult::exceeds();
  }

 private:
  // Cursor followed by the sorted lit positions.
  static std::vector<long> normal_form(const Word& w) {
    long cursor = 0;
    std::set<long> lit;
    for (const Letter x : w.letters()) {
      if (x == 1 || x == -1) {
        if (!lit.erase(cursor)) lit.insert(cursor);
      } else {
        cursor += x > 0 ? 1 : -1;
      }
    }
    std::vector<long> out{cursor};
    out.insert(out.end(), lit.begin(), lit.end());
    return out;
  }
};

// A word x1...xk is the bijection x1 o ... o xk of Z; g1 = (0 1), g2 = n -> n+1.
class SymShiftOracle final : public GroupOracle {
 public:
  Verdict decide(const Word& w) const override {
    const auto nf = normal_form(w);
    return nf.size() == 1 && nf[0] == 0 ? Verdict::trivial() : Verdict::nontrivial();
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    return hash_longs(normal_form(w));
  }
  OrderResult order(const Word& w, std::uint64_t budget) const override {
    const auto nf = normal_form(w);
    if (nf[0] != 0) return OrderResult::exceeds(true);
    std::map<long, long> perm;
    for (std::size_t i = 1; i + 1 < nf.size(); i += 2) perm[nf[i]] = nf[i + 1];
    std::uint64_t m = 1;
    std::set<long> done;
    for (const auto& [start, image] : perm) {
      if (done.count(start)) continue;
      std::uint64_t len = 0;
      long cur = start;
      do {
        done.insert(cur);
        cur = perm.at(cur);
        ++len;
      } while (cur != start);
      m = std::lcm(m, len);
      if (m > budget) return OrderResult::exceeds();
    }
    return OrderResult::finite(m);
  }

 private:
  // Net shift followed by (point, image) pairs where the bijection differs
  // from the pure shift.
  static std::vector<long> normal_form(const Word& w) {
    long shift = 0;
    for (const Letter x : w.letters()) {
      if (x == 2) ++shift;
      if (x == -2) --shift;
    }
    const long reach = 2 * static_cast<long>(w.size()) + 2;
    std::vector<long> out{shift};
    const auto letters = w.letters();
    for (long p = -reach; p <= reach; ++p) {
      long v = p;
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        switch (*it) {
          case 1:
          case -1:
            if (v == 0) {
              v = 1;
            } else if (v == 1) {
              v = 0;
            }
            break;
          case 2: ++v; break;
          default: --v; break;
        }
      }
      if (v != p + shift) {
        out.push_back(p);
        out.push_back(v);
      }
    }
    return out;
  }
};

// S_k x| Z_k with Z_k acting by conjugation with the k-cycle c is S_k x Z_k
// via (pi, j) -> (pi c^j, j); elements are kept in that product form.
class SymShiftFinOracle final : public GroupOracle {
 public:
  explicit SymShiftFinOracle(long k) : k_(static_cast<int>(k)) {}

  Verdict decide(const Word& w) const override {
    const auto nf = normal_form(w);
    for (int i = 0; i < k_; ++i) {
      if (nf[static_cast<std::size_t>(i)] != i) return Verdict::nontrivial();
    }
    return nf.back() == 0 ? Verdict::trivial() : Verdict::nontrivial();
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    const auto nf = normal_form(w);
    return fnv1a_values(std::span<const int>(nf));
  }
  OrderResult order(const Word& w, std::uint64_t budget) const override {
    const auto nf = normal_form(w);
    std::uint64_t m = static_cast<std::uint64_t>(k_ / std::gcd(nf.back(), k_));
    std::vector<bool> done(static_cast<std::size_t>(k_), false);
    for (int start = 0; start < k_; ++start) {
      if (done[static_cast<std::size_t>(start)]) continue;
      std::uint64_t len = 0;
      int cur = start;
      do {
        done[static_cast<std::size_t>(cur)] = true;
        cur = nf[static_cast<std::size_t>(cur)];
        ++len;
      } while (cur != start);
      m = std::lcm(m, len);
    }
    return m <= budget ? OrderResult::finite(m) : OrderResult::exceeds();
  }

 private:
  // Images of 0..k-1 followed by the Z_k component.
  std::vector<int> normal_form(const Word& w) const {
    std::vector<int> img(static_cast<std::size_t>(k_) + 1);
    std::iota(img.begin(), img.end() - 1, 0);
    int shift = 0;
    const auto letters = w.letters();
    for (int p = 0; p < k_; ++p) {
      int v = p;
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        switch (*it) {
          case 1:
          case -1:
            if (v == 0) {
              v = 1;
            } else if (v == 1) {
              v = 0;
            }
            break;
          case 2: v = (v + 1) % k_; break;
          default: v = (v + k_ - 1) % k_; break;
        }
      }
      img[static_cast<std::size_t>(p)] = v;
    }
    for (const Letter x : letters) {
      if (x == 2) shift = (shift + 1) % k_;
      if (x == -2) shift = (shift + k_ - 1) % k_;
    }
    img.back() = shift;
    return img;
  }

  int k_;
};

class FinitelyPresentedOracle final : public GroupOracle {
 public:
  FinitelyPresentedOracle(std::vector<Word> relators, std::uint64_t budget)
      : relators_(std::move(relators)), budget_(budget) {}

  Verdict decide(const Word& w) const override {
    return closure_member(relators_, w, budget_);
  }
  bool exact() const override { return false; }

 private:
  std::vector<Word> relators_;
  std::uint64_t budget_;
};

std::string join_words(const std::vector<Word>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i > 0 ? "," : "") + words[i].text();
  return out;
}

}  // namespace

MarkedGroup free_group(int n) {
  if (n < 1 || n > kMaxArity) throw UsageError("free:n needs n in [1, 26]");
  return MarkedGroup(n, "free:" + std::to_string(n), std::make_shared<FreeOracle>());
}

MarkedGroup abelian_group(int n) {
  if (n < 1 || n > kMaxArity) throw UsageError("abelian:n needs n in [1, 26]");
  return MarkedGroup(n, "abelian:" + std::to_string(n), std::make_shared<AbelianOracle>());
}

MarkedGroup cyclic_group(long k) {
  if (k < 1) throw UsageError("cyclic:k needs k >= 1");
  return MarkedGroup(2, "cyclic:" + std::to_string(k), std::make_shared<CyclicOracle>(k));
}

MarkedGroup heisenberg_group() {
  return MarkedGroup(2, "heisenberg", std::make_shared<HeisenbergOracle>());
}

MarkedGroup baumslag_solitar(long m, long n) {
  if (m < 1 || n < 1) throw UsageError("bs:m,n needs m, n >= 1");
  return MarkedGroup(2, "bs:" + std::to_string(m) + "," + std::to_string(n),
                     std::make_shared<BaumslagSolitarOracle>(m, n));
}

MarkedGroup lamplighter_group() {
  return MarkedGroup(2, "lamplighter", std::make_shared<LamplighterOracle>());
}

MarkedGroup symshift_group() {
  return MarkedGroup(2, "symshift", std::make_shared<SymShiftOracle>());
}

MarkedGroup symshift_fin_group(long k) {
  if (k < 2 || k > 4096) throw UsageError("symshift_fin:k needs k in [2, 4096]");
  return MarkedGroup(2, "symshift_fin:" + std::to_string(k),
                     std::make_shared<SymShiftFinOracle>(k));
}

MarkedGroup fp_group(int n, std::vector<Word> relators, std::uint64_t budget) {
  if (n < 1 || n > kMaxArity) throw UsageError("fp:n needs n in [1, 26]");
  if (relators.empty()) throw UsageError("fp:n needs at least one relator");
  for (const Word& r : relators) {
    if (r.arity() != n) throw UsageError("relator " + r.text() + " has the wrong arity");
  }
  std::string spec = "fp:" + std::to_string(n) + ":" + join_words(relators);
  return MarkedGroup(n, std::move(spec),
                     std::make_shared<FinitelyPresentedOracle>(std::move(relators), budget));
}

}  // namespace mgw
