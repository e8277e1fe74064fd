#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mgw/oracles.hpp"
#include "mgw/space.hpp"

namespace mgw {

// Outcome of a property check. Fails always carries a checkable witness;
// AtScale means the answer only covers the searched range named in `scale`.
struct ProbeVerdict {
  enum class Outcome { Holds, Fails, Inconclusive };
  enum class Level { Exact, AtScale };

  Outcome outcome = Outcome::Inconclusive;
  Level level = Level::AtScale;
  std::vector<Word> witness;
  std::string scale;

  static ProbeVerdict holds(Level level, std::string scale) {
    return {Outcome::Holds, level, {}, std::move(scale)};
  }
  static ProbeVerdict fails(Level level, std::vector<Word> witness, std::string scale) {
    return {Outcome::Fails, level, std::move(witness), std::move(scale)};
  }
  static ProbeVerdict inconclusive(std::string scale) {
    return {Outcome::Inconclusive, Level::AtScale, {}, std::move(scale)};
  }

  bool is_holds() const noexcept { return outcome == Outcome::Holds; }
  bool is_fails() const noexcept { return outcome == Outcome::Fails; }
};

std::string to_string(ProbeVerdict::Outcome outcome);
std::string to_string(ProbeVerdict::Level level);

// All [g_i, g_j] trivial. A decision for marked groups.
ProbeVerdict abelian_check(const MarkedGroup& g);
// All left-normed simple commutators of weight k+1 trivial.
ProbeVerdict nilpotency_class_probe(const MarkedGroup& g, int k);
// One-sided: Fails on a nontrivial derived witness of length <= max_len.
ProbeVerdict solvable_degree_probe(const MarkedGroup& g, int k, int max_len);

struct TorsionEntry {
  Word element;
  OrderResult order;
};

struct TorsionReport {
  enum class Summary { TorsionFreeConsistent, PeriodicConsistent, Mixed };

  std::vector<TorsionEntry> entries;
  Summary summary = Summary::PeriodicConsistent;
};

std::string to_string(TorsionReport::Summary summary);

// Orders of the nontrivial elements of ball(g, max_len).
TorsionReport torsion_probe(const MarkedGroup& g, int max_len, std::uint64_t order_budget);

// Exact nonnegative fraction in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  std::string text() const;
  bool operator==(const Rational&) const = default;
  std::strong_ordering operator<=>(const Rational& rhs) const;
};

// |gen F' delta F'| / |F'| for F' = F without duplicate elements.
Rational folner_ratio(const MarkedGroup& g, const std::vector<Word>& F, const Word& gen);

enum class FolnerStrategy { Balls, LamplighterBoxes };

struct FolnerOptions {
  FolnerStrategy strategy = FolnerStrategy::Balls;
  std::size_t max_elements = 2'000'000;
  int max_radius = -1;  // balls only; -1 means limited by max_elements
};

struct FolnerResult {
  bool found = false;
  std::vector<Word> set;        // the set found, or the best one seen
  std::vector<Rational> ratios;  // per element of K, for `set`
  Rational best;                 // largest entry of `ratios`
  std::string family;            // e.g. "ball radius 3"
};

// Looks for F with folner_ratio(g, F, k) <= 1/m for all k in K.
FolnerResult folner_search(const MarkedGroup& g, const std::vector<Word>& K, int m,
                           const FolnerOptions& options = {});

// Box with cursor range [0, M] used for the lamplighter: every (S, p) with
// 0 <= p <= M and S inside [p - M, p].
std::vector<Word> lamplighter_box(int M);

struct EndoReport {
  ProbeVerdict welldefined;
  ProbeVerdict injective;
  ProbeVerdict surjective;
};

// Checks g_i -> images[i] on words of length <= L; preimages are searched
// among words of length <= preimage_len (0 means 2L).
EndoReport endo_probe(const MarkedGroup& g, const std::vector<Word>& images, int L,
                      int preimage_len = 0);

struct IndexResult {
  ProbeVerdict verdict;
  std::size_t cosets = 0;
};

// Index of <A> in g compared with j by left-coset enumeration; coset
// equality is witnessed by products of at most B letters of A (0 picks
// 2 * max|a| * j).
IndexResult index_probe(const MarkedGroup& g, const std::vector<Word>& A, int j, int B = 0);

using WordMap = std::function<Word(const Word&)>;

// phi well defined on E and E.E, injective on E, phi(gh) = phi(g) phi(h).
ProbeVerdict local_embedding_check(const MarkedGroup& source, const std::vector<Word>& E,
                                   const MarkedGroup& target, const WordMap& phi);

}  // namespace mgw
