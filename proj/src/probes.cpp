#include "mgw/probes.hpp"

#include <algorithm>
#include <numeric>

#include "mgw/element_index.hpp"
#include "mgw/error.hpp"
#include "mgw/kernels.hpp"

namespace mgw {

std::string to_string(ProbeVerdict::Outcome outcome) {
  switch (outcome) {
    case ProbeVerdict::Outcome::Holds: return "holds";
    case ProbeVerdict::Outcome::Fails: return "fails";
    case ProbeVerdict::Outcome::Inconclusive: return "inconclusive";
  }
  return {};
}

std::string to_string(ProbeVerdict::Level level) {
  return level == ProbeVerdict::Level::Exact ? "exact" : "at_scale";
}

std::string to_string(TorsionReport::Summary summary) {
  switch (summary) {
    case TorsionReport::Summary::TorsionFreeConsistent: return "torsion-free-consistent";
    case TorsionReport::Summary::PeriodicConsistent: return "periodic-consistent";
    case TorsionReport::Summary::Mixed: return "mixed";
  }
  return {};
}

namespace {

// First word (in the given order) that is nontrivial in g.
std::optional<Word> first_nontrivial(const MarkedGroup& g, const std::vector<Word>& words) {
  const auto verdicts = batch_verdicts(g, words, Exec::Parallel);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!require_certified(verdicts[i], words[i], g.spec())) return words[i];
  }
  return std::nullopt;
}

}  // namespace

ProbeVerdict abelian_check(const MarkedGroup& g) {
  const int n = g.arity();
  std::vector<Word> comms;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      comms.push_back(commutator(Word::generator(n, i), Word::generator(n, j)));
    }
  }
  if (auto w = first_nontrivial(g, comms)) {
    return ProbeVerdict::fails(ProbeVerdict::Level::Exact, {*w}, "all generator pairs");
  }
  return ProbeVerdict::holds(ProbeVerdict::Level::Exact, "all generator pairs");
}

ProbeVerdict nilpotency_class_probe(const MarkedGroup& g, int k) {
  if (k < 1) throw UsageError("nilpotency class must be >= 1");
  const int n = g.arity();
  const auto weight = static_cast<std::size_t>(k) + 1;
  std::vector<Word> comms;
  std::vector<int> idx(weight, 1);
  while (true) {
    comms.push_back(simple_commutator(n, idx));
    std::size_t pos = weight;
    while (pos > 0 && idx[pos - 1] == n) idx[--pos] = 1;
    if (pos == 0) break;
    ++idx[pos - 1];
  }
  const std::string scale = "all " + std::to_string(comms.size()) +
                            " simple commutators of weight " + std::to_string(weight);
  if (auto w = first_nontrivial(g, comms)) {
    return ProbeVerdict::fails(ProbeVerdict::Level::Exact, {*w}, scale);
  }
  return ProbeVerdict::holds(ProbeVerdict::Level::Exact, scale);
}

ProbeVerdict solvable_degree_probe(const MarkedGroup& g, int k, int max_len) {
  const std::vector<Word> witnesses = derived_witnesses(g.arity(), k, max_len);
  const std::string scale = std::to_string(witnesses.size()) + " derived witnesses of length <= " +
                            std::to_string(max_len);
  if (auto w = first_nontrivial(g, witnesses)) {
    return ProbeVerdict::fails(ProbeVerdict::Level::Exact, {*w}, scale);
  }
  return ProbeVerdict::holds(ProbeVerdict::Level::AtScale, scale);
}

TorsionReport torsion_probe(const MarkedGroup& g, int max_len, std::uint64_t order_budget) {
  const CayleyBall b = ball(g, max_len);
  TorsionReport report;
  report.entries.resize(b.size() - 1);
  parallel_for(report.entries.size(), Exec::Parallel, [&](std::size_t i) {
    report.entries[i] = {b.words[i + 1], g.order(b.words[i + 1], order_budget)};
  });
  const auto finite = static_cast<std::size_t>(
      std::count_if(report.entries.begin(), report.entries.end(),
                    [](const TorsionEntry& e) { return e.order.is_finite(); }));
  if (finite == report.entries.size()) {
    report.summary = TorsionReport::Summary::PeriodicConsistent;
  } else if (finite == 0) {
    report.summary = TorsionReport::Summary::TorsionFreeConsistent;
  } else {
    report.summary = TorsionReport::Summary::Mixed;
  }
  return report;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UsageError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t d = std::gcd(num < 0 ? -num : num, den);
  return {num / d, den / d};
}

std::string Rational::text() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering Rational::operator<=>(const Rational& rhs) const {
  const __int128 a = static_cast<__int128>(num) * rhs.den;
  const __int128 b = static_cast<__int128>(rhs.num) * den;
  return a < b ? std::strong_ordering::less
               : (a > b ? std::strong_ordering::greater : std::strong_ordering::equal);
}

namespace {

// Deduplicated finite subset with ratio queries.
class FiniteSet {
 public:
  FiniteSet(const MarkedGroup& g, const std::vector<Word>& F) : index_(g) {
    if (F.empty()) throw UsageError("Folner set must be nonempty");
    const auto keys = batch_fingerprints(g, F, Exec::Parallel);
    for (std::size_t i = 0; i < F.size(); ++i) index_.insert(F[i], keys[i]);
  }

  Rational ratio(const Word& gen) const {
    const std::size_t n = index_.size();
    std::vector<char> inside(n, 0);
    parallel_for(n, Exec::Parallel, [&](std::size_t i) {
      inside[i] = index_.find(gen * index_.word(i)).has_value() ? 1 : 0;
    });
    const auto kept = static_cast<std::int64_t>(std::count(inside.begin(), inside.end(), 1));
    const auto size = static_cast<std::int64_t>(n);
    // |gF| = |F|, so |gF delta F| = 2 (|F| - |gF cap F|).
    return Rational::make(2 * (size - kept), size);
  }

  std::vector<Word> words() const {
    std::vector<Word> out;
    out.reserve(index_.size());
    for (std::size_t i = 0; i < index_.size(); ++i) out.push_back(index_.word(i));
    return out;
  }

 private:
  ElementIndex index_;
};

}  // namespace

Rational folner_ratio(const MarkedGroup& g, const std::vector<Word>& F, const Word& gen) {
  return FiniteSet(g, F).ratio(gen);
}

std::vector<Word> lamplighter_box(int M) {
  if (M < 0) throw UsageError("box size must be >= 0");
  const Word lamp = Word::generator(2, 1);
  const Word step = Word::generator(2, 2);
  std::vector<Word> out;
  const std::uint64_t subsets = std::uint64_t{1} << (M + 1);
  for (int p = 0; p <= M; ++p) {
    const Word to_start = step.power(p - M);
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      Word w = to_start;
      for (int i = 0; i <= M; ++i) {
        if ((mask >> i) & 1U) w = w * lamp;
        if (i < M) w = w * step;
      }
      out.push_back(std::move(w));
    }
  }
  return out;
}

FolnerResult folner_search(const MarkedGroup& g, const std::vector<Word>& K, int m,
                           const FolnerOptions& options) {
  if (m < 1) throw UsageError("Folner parameter m must be >= 1");
  if (K.empty()) throw UsageError("Folner search needs at least one element in K");
  if (options.strategy == FolnerStrategy::LamplighterBoxes && g.spec() != "lamplighter") {
    throw UsageError("lamplighter boxes only apply to the lamplighter group");
  }
  const Rational target = Rational::make(1, m);
  FolnerResult result;
  bool have_best = false;

  for (int step = 0;; ++step) {
    std::vector<Word> F;
    std::string family;
    if (options.strategy == FolnerStrategy::Balls) {
      if (options.max_radius >= 0 && step > options.max_radius) break;
      try {
        F = ball(g, step, options.max_elements).words;
      } catch (const ComputeError&) {
        break;
      }
      family = "ball radius " + std::to_string(step);
    } else {
      if (step > 40) break;
      const std::uint64_t size = static_cast<std::uint64_t>(step + 1) << (step + 1);
      if (size > options.max_elements) break;
      F = lamplighter_box(step);
      family = "lamplighter box M=" + std::to_string(step);
    }
    const FiniteSet set(g, F);
    std::vector<Rational> ratios;
    for (const Word& k : K) ratios.push_back(set.ratio(k));
    const Rational worst = *std::max_element(ratios.begin(), ratios.end());
    if (!have_best || worst < result.best) {
      have_best = true;
      result.best = worst;
      result.ratios = ratios;
      result.family = family;
      result.set = set.words();
    }
    if (worst <= target) {
      result.found = true;
      return result;
    }
  }
  return result;
}

EndoReport endo_probe(const MarkedGroup& g, const std::vector<Word>& images, int L,
                      int preimage_len) {
  const int n = g.arity();
  if (static_cast<int>(images.size()) != n) {
    throw UsageError("endomorphism needs " + std::to_string(n) + " images");
  }
  if (L < 0) throw UsageError("scale must be >= 0");
  if (preimage_len == 0) preimage_len = 2 * L;
  if (preimage_len < L) throw UsageError("preimage length must be >= the scale");
  const auto phi = [&](const Word& w) { return substitute(w, images); };
  const std::string scale = "words of length <= " + std::to_string(L);
  using Level = ProbeVerdict::Level;
  EndoReport report;

  const std::vector<Word> words = enumerate_words(n, L);
  std::vector<Word> mapped(words.size());
  parallel_for(words.size(), Exec::Parallel, [&](std::size_t i) { mapped[i] = phi(words[i]); });

  ElementIndex classes(g);
  std::vector<std::size_t> class_of(words.size());
  std::vector<std::size_t> rep_of_class;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto [id, inserted] = classes.insert(words[i]);
    class_of[i] = id;
    if (inserted) rep_of_class.push_back(i);
  }

  report.welldefined = ProbeVerdict::holds(Level::AtScale, scale);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::size_t r = rep_of_class[class_of[i]];
    if (r == i) continue;
    const Verdict v = g.equal(mapped[i], mapped[r]);
    if (!require_certified(v, mapped[i] * mapped[r].inverse(), g.spec())) {
      report.welldefined = ProbeVerdict::fails(Level::Exact, {words[r], words[i]}, scale);
      break;
    }
  }

  report.injective = ProbeVerdict::holds(Level::AtScale, scale);
  ElementIndex image_classes(g);
  for (const std::size_t r : rep_of_class) {
    const auto [id, inserted] = image_classes.insert(mapped[r]);
    if (!inserted) {
      report.injective =
          ProbeVerdict::fails(Level::Exact, {words[rep_of_class[id]], words[r]}, scale);
      break;
    }
  }

  const std::string surj_scale = "elements of length <= " + std::to_string(L) +
                                 ", preimages of length <= " + std::to_string(preimage_len);
  report.surjective = ProbeVerdict::holds(Level::AtScale, surj_scale);
  const std::vector<Word> pre = enumerate_words(n, preimage_len);
  std::vector<Word> pre_images(pre.size());
  parallel_for(pre.size(), Exec::Parallel, [&](std::size_t i) { pre_images[i] = phi(pre[i]); });
  const auto keys = batch_fingerprints(g, pre_images, Exec::Parallel);
  ElementIndex reached(g);
  for (std::size_t i = 0; i < pre_images.size(); ++i) reached.insert(pre_images[i], keys[i]);
  const CayleyBall b = ball(g, L);
  for (const Word& w : b.words) {
    if (!reached.find(w)) {
      report.surjective = ProbeVerdict::fails(Level::AtScale, {w}, surj_scale);
      break;
    }
  }
  return report;
}

IndexResult index_probe(const MarkedGroup& g, const std::vector<Word>& A, int j, int B) {
  if (j < 2) throw UsageError("index bound j must be >= 2");
  if (A.empty()) throw UsageError("index probe needs a nonempty subgroup generating set");
  const int n = g.arity();
  std::size_t longest = 1;
  for (const Word& a : A) {
    if (a.arity() != n) throw UsageError("subgroup generator of the wrong arity");
    longest = std::max(longest, a.size());
  }
  if (B == 0) B = static_cast<int>(2 * longest * static_cast<std::size_t>(j));
  if (B < 0) throw UsageError("witness length must be >= 0");

  // Elements of <A> that are products of at most B letters of A^(+-1).
  ElementIndex H(g);
  H.insert(Word(n));
  std::vector<Word> alphabet;
  for (const Word& a : A) {
    alphabet.push_back(a);
    alphabet.push_back(a.inverse());
  }
  std::vector<Word> frontier{Word(n)};
  for (int len = 1; len <= B && !frontier.empty(); ++len) {
    std::vector<Word> next;
    for (const Word& h : frontier) {
      for (const Word& a : alphabet) {
        Word c = h * a;
        if (H.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }

  const std::string scale = "coset merges witnessed by <= " + std::to_string(B) +
                            " subgroup letters (" + std::to_string(H.size()) + " elements)";
  std::vector<Word> reps{Word(n)};
  for (std::size_t head = 0; head < reps.size(); ++head) {
    for (int r = 0; r < 2 * n; ++r) {
      const Letter x = letter_from_rank(r);
      const Word c = Word::generator(n, std::abs(x), x < 0) * reps[head];
      bool merged = false;
      for (const Word& rep : reps) {
        if (H.find(rep.inverse() * c)) {
          merged = true;
          break;
        }
      }
      if (merged) continue;
      reps.push_back(c);
      if (reps.size() >= static_cast<std::size_t>(j)) {
        return {ProbeVerdict::fails(ProbeVerdict::Level::AtScale, reps, scale), reps.size()};
      }
    }
  }
  // The reps cover G: every generator maps their union into itself.
  return {ProbeVerdict::holds(ProbeVerdict::Level::Exact, scale), reps.size()};
}

ProbeVerdict local_embedding_check(const MarkedGroup& source, const std::vector<Word>& E,
                                   const MarkedGroup& target, const WordMap& phi) {
  using Level = ProbeVerdict::Level;
  const std::string scale = std::to_string(E.size()) + " elements and their pairwise products";
  std::vector<Word> domain = E;
  for (const Word& g : E) {
    for (const Word& h : E) domain.push_back(g * h);
  }
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  std::vector<Word> image(domain.size());
  parallel_for(domain.size(), Exec::Parallel, [&](std::size_t i) { image[i] = phi(domain[i]); });
  const auto image_of = [&](const Word& w) {
    const auto it = std::lower_bound(domain.begin(), domain.end(), w);
    return image[static_cast<std::size_t>(it - domain.begin())];
  };
  const auto same = [&](const MarkedGroup& g, const Word& u, const Word& v) {
    return require_certified(g.equal(u, v), u * v.inverse(), g.spec());
  };

  // Equal elements of the domain must have equal images.
  ElementIndex classes(source);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const auto [id, inserted] = classes.insert(domain[i]);
    if (inserted) {
      reps.push_back(i);
    } else if (!same(target, image[i], image[reps[id]])) {
      return ProbeVerdict::fails(Level::Exact, {domain[reps[id]], domain[i]}, scale);
    }
  }

  ElementIndex source_E(source);
  ElementIndex target_E(target);
  std::vector<Word> first;
  for (const Word& g : E) {
    if (!source_E.insert(g).second) continue;
    const auto [id, inserted] = target_E.insert(image_of(g));
    if (!inserted) return ProbeVerdict::fails(Level::Exact, {first[id], g}, scale);
    first.push_back(g);
  }

  for (const Word& g : E) {
    for (const Word& h : E) {
      if (!same(target, image_of(g * h), image_of(g) * image_of(h))) {
        return ProbeVerdict::fails(Level::Exact, {g, h}, scale);
      }
    }
  }
  return ProbeVerdict::holds(Level::Exact, scale);
}

}  // namespace mgw
