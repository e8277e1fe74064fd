#include <doctest.h>

#include <set>

#include "mgw/catalog.hpp"
#include "mgw/error.hpp"
#include "mgw/families.hpp"
#include "mgw/probes.hpp"
#include "mgw/space.hpp"
#include "support.hpp"

using mgw::MarkedGroup;
using mgw::ProbeVerdict;
using mgw::Rational;
using mgw::Word;

namespace {

Word w2(const char* text) { return mgw::parse_word(text, 2); }
MarkedGroup grp(const std::string& spec) { return mgw::instantiate(spec); }

std::vector<Word> gens(int n) {
  std::vector<Word> out;
  for (int i = 1; i <= n; ++i) out.push_back(Word::generator(n, i));
  return out;
}

// |gF delta F| / |F| computed with reference lamplighter states.
Rational lamp_ratio(const std::vector<Word>& F, const Word& g) {
  using Key = std::pair<std::vector<long>, long>;
  const auto key = [](const testing::LampState& s) {
    return Key{{s.lit.begin(), s.lit.end()}, s.cursor};
  };
  std::set<Key> set, moved;
  for (const Word& f : F) {
    set.insert(key(testing::lamp_eval(f)));
    moved.insert(key(testing::lamp_eval(g * f)));
  }
  std::size_t common = 0;
  for (const auto& k : moved) common += set.count(k);
  return Rational::make(static_cast<std::int64_t>(2 * (set.size() - common)),
                        static_cast<std::int64_t>(set.size()));
}

const std::vector<std::string> kCatalog{"free:2",      "abelian:2",  "abelian:3",   "cyclic:6",
                                        "heisenberg",  "bs:2,3",     "lamplighter", "symshift",
                                        "grigL:(012)", "grig:(012)", "symshift_fin:5"};

}  // namespace

TEST_CASE("abelian check") {
  CHECK(mgw::abelian_check(grp("abelian:2")).is_holds());
  CHECK(mgw::abelian_check(grp("abelian:2")).level == ProbeVerdict::Level::Exact);
  const auto f = mgw::abelian_check(grp("free:2"));
  CHECK(f.is_fails());
  REQUIRE(f.witness.size() == 1);
  CHECK(f.witness[0].text() == "abAB");
  const auto g = mgw::abelian_check(grp("grig:(012)"));
  CHECK(g.is_fails());
  REQUIRE(!g.witness.empty());
  CHECK(grp("grig:(012)").oracle(g.witness[0]).is_nontrivial());
}

TEST_CASE("property: abelian check matches the radius 2 ball") {
  for (const auto& spec : kCatalog) {
    CAPTURE(spec);
    const MarkedGroup g = grp(spec);
    const auto b = mgw::ball(g, 2);
    // g_i g_j and g_j g_i both lie in the ball, so commuting is visible there
    bool commute = true;
    for (std::size_t i = 0; i < static_cast<std::size_t>(g.arity()); ++i) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(g.arity()); ++j) {
        commute = commute && b.out[b.out[0][i]][j] == b.out[b.out[0][j]][i];
      }
    }
    CHECK(mgw::abelian_check(g).is_holds() == commute);
    // torsion-free abelian marked groups share the free abelian certificate
    const auto free_ab = mgw::ball(grp("abelian:" + std::to_string(g.arity())), 2);
    if (mgw::canonical_certificate(b) == mgw::canonical_certificate(free_ab)) {
      CHECK(mgw::abelian_check(g).is_holds());
    }
  }
}

TEST_CASE("nilpotency class") {
  CHECK(mgw::nilpotency_class_probe(grp("abelian:2"), 1).is_holds());
  CHECK(mgw::nilpotency_class_probe(grp("heisenberg"), 2).is_holds());
  const auto h1 = mgw::nilpotency_class_probe(grp("heisenberg"), 1);
  CHECK(h1.is_fails());
  REQUIRE(!h1.witness.empty());
  CHECK(h1.witness[0].text() == "abAB");
  for (int k = 1; k <= 4; ++k) {
    const auto v = mgw::nilpotency_class_probe(grp("free:2"), k);
    CHECK(v.is_fails());
    CHECK(v.level == ProbeVerdict::Level::Exact);
    CHECK(grp("free:2").oracle(v.witness[0]).is_nontrivial());
  }
  CHECK_THROWS_AS(mgw::nilpotency_class_probe(grp("free:2"), 0), mgw::UsageError);
}

TEST_CASE("property: nilpotency verdicts are monotone in k") {
  for (const auto& spec : {"free:2", "abelian:2", "heisenberg", "cyclic:6", "lamplighter",
                           "symshift_fin:4"}) {
    bool held = false;
    for (int k = 1; k <= 4; ++k) {
      const bool holds = mgw::nilpotency_class_probe(grp(spec), k).is_holds();
      if (held) CHECK(holds);
      held = held || holds;
    }
  }
}

TEST_CASE("solvable degree probe") {
  const auto a = mgw::solvable_degree_probe(grp("abelian:2"), 1, 8);
  CHECK(a.is_holds());
  CHECK(a.level == ProbeVerdict::Level::AtScale);
  CHECK(mgw::solvable_degree_probe(grp("grig:(0)"), 2, 8).is_holds());
  const auto f = mgw::solvable_degree_probe(grp("free:2"), 1, 6);
  CHECK(f.is_fails());
  CHECK(f.level == ProbeVerdict::Level::Exact);
  CHECK(grp("free:2").oracle(f.witness[0]).is_nontrivial());
  // the witness is a genuine second derived word that survives in G
  const auto g = mgw::solvable_degree_probe(grp("grig:(012)"), 2, 16);
  CHECK(g.is_fails());
  REQUIRE(!g.witness.empty());
  for (const long s : mgw::exponent_sums(g.witness[0])) CHECK(s == 0);
  CHECK(grp("grig:(012)").oracle(g.witness[0]).is_nontrivial());
}

TEST_CASE("torsion probe") {
  const auto f = mgw::torsion_probe(grp("free:2"), 3, 1000);
  CHECK(f.summary == mgw::TorsionReport::Summary::TorsionFreeConsistent);
  CHECK(f.entries.size() == 52);
  const auto c = mgw::torsion_probe(grp("cyclic:6"), 1, 100);
  bool saw = false;
  for (const auto& e : c.entries) {
    if (e.element.text() == "a") {
      saw = true;
      CHECK(e.order == mgw::OrderResult::finite(6));
    }
  }
  CHECK(saw);
  const auto g = mgw::torsion_probe(grp("grig:(012)"), 4, 8192);
  CHECK(g.summary == mgw::TorsionReport::Summary::PeriodicConsistent);
  for (const auto& e : g.entries) CHECK(e.order.is_finite());
  const auto l = mgw::torsion_probe(grp("lamplighter"), 2, 64);
  CHECK(l.summary == mgw::TorsionReport::Summary::Mixed);
}

TEST_CASE("property: torsion orders are minimal") {
  for (const auto& spec : {"grig:(012)", "cyclic:6", "symshift_fin:4", "lamplighter"}) {
    const MarkedGroup g = grp(spec);
    for (const auto& e : mgw::torsion_probe(g, 3, 256).entries) {
      if (!e.order.is_finite()) continue;
      CHECK(g.oracle(e.element.power(static_cast<long>(e.order.order))).is_trivial());
      for (std::uint64_t m = 1; m < e.order.order; ++m) {
        CHECK(g.oracle(e.element.power(static_cast<long>(m))).is_nontrivial());
      }
    }
  }
}

TEST_CASE("rationals") {
  CHECK(Rational::make(6, 4).text() == "3/2");
  CHECK(Rational::make(0, 7).text() == "0");
  CHECK(Rational::make(4, 2).text() == "2");
  CHECK(Rational::make(1, 3) < Rational::make(1, 2));
  CHECK(Rational::make(2, 4) == Rational::make(1, 2));
  CHECK_THROWS_AS(Rational::make(1, 0), mgw::UsageError);
}

TEST_CASE("Folner ratios") {
  const auto cyc = grp("cyclic:5");
  std::vector<Word> all;
  for (int i = 0; i < 5; ++i) all.push_back(w2("a").power(i));
  CHECK(mgw::folner_ratio(cyc, all, w2("a")) == Rational::make(0, 1));
  const auto f = grp("free:2");
  CHECK(mgw::folner_ratio(f, mgw::ball(f, 1).words, w2("a")) == Rational::make(6, 5));
  // duplicates in F are merged first
  std::vector<Word> dup = all;
  dup.push_back(w2("aaaaaa"));
  CHECK(mgw::folner_ratio(cyc, dup, w2("a")) == Rational::make(0, 1));
  CHECK_THROWS_AS(mgw::folner_ratio(f, {}, w2("a")), mgw::UsageError);
}

TEST_CASE("property: lamplighter box ratios against the reference model") {
  const auto lamp = grp("lamplighter");
  for (int M = 1; M <= 7; ++M) {
    const auto box = mgw::lamplighter_box(M);
    CHECK(box.size() == static_cast<std::size_t>(M + 1) << (M + 1));
    for (const Word& g : gens(2)) {
      const Rational r = mgw::folner_ratio(lamp, box, g);
      CHECK(r == lamp_ratio(box, g));
    }
    CHECK(mgw::folner_ratio(lamp, box, w2("b")) == Rational::make(2, M + 1));
  }
}

TEST_CASE("property: Folner ratio is zero iff the set is invariant") {
  testing::Rng rng;
  const auto g = grp("symshift_fin:4");
  const auto elements = mgw::ball(g, 10).words;
  REQUIRE(elements.size() == 96);  // all of S_4 x| Z_4
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> F;
    for (const Word& e : elements) {
      if (rng.uniform(0, 3) == 0) F.push_back(e);
    }
    if (F.empty()) F.push_back(elements[0]);
    const Word gen = testing::random_word(rng, 2, 3);
    const bool zero = mgw::folner_ratio(g, F, gen) == Rational::make(0, 1);
    bool invariant = true;
    for (const Word& f : F) {
      bool inside = false;
      for (const Word& h : F) inside = inside || g.equal(gen * f, h).is_trivial();
      invariant = invariant && inside;
    }
    CHECK(zero == invariant);
  }
  CHECK(mgw::folner_ratio(g, elements, w2("a")) == Rational::make(0, 1));
}

TEST_CASE("Folner search") {
  const auto lamp = mgw::folner_search(grp("lamplighter"), gens(2), 4,
                                       {mgw::FolnerStrategy::LamplighterBoxes});
  CHECK(lamp.found);
  CHECK(lamp.best <= Rational::make(1, 4));
  const auto ab = mgw::folner_search(grp("abelian:2"), gens(2), 10);
  CHECK(ab.found);
  CHECK(ab.best <= Rational::make(1, 10));
  mgw::FolnerOptions o;
  o.max_radius = 4;
  const auto f = mgw::folner_search(grp("free:2"), gens(2), 2, o);
  CHECK(!f.found);
  CHECK(f.best >= Rational::make(1, 2));
  CHECK(f.family == "ball radius 4");
}

TEST_CASE("endomorphism probe") {
  const auto f = grp("free:2");
  const auto id = mgw::endo_probe(f, gens(2), 3);
  CHECK(id.welldefined.is_holds());
  CHECK(id.injective.is_holds());
  CHECK(id.surjective.is_holds());
  const auto sq = mgw::endo_probe(f, {w2("aa"), w2("b")}, 3);
  CHECK(sq.welldefined.is_holds());
  CHECK(sq.injective.is_holds());
  CHECK(sq.surjective.is_fails());
  CHECK(sq.surjective.level == ProbeVerdict::Level::AtScale);
  REQUIRE(!sq.surjective.witness.empty());
  CHECK(sq.surjective.witness[0].text() == "a");
  const auto ab = mgw::endo_probe(grp("abelian:2"), {w2("ab"), w2("b")}, 3);
  CHECK(ab.welldefined.is_holds());
  CHECK(ab.injective.is_holds());
  CHECK(ab.surjective.is_holds());
  // a -> a, b -> 1 is not injective; in Z/2 x Z marked ... a -> b is not
  // well defined on cyclic:3 since a^3 = 1 but b^3 != 1
  CHECK(mgw::endo_probe(f, {w2("a"), Word(2)}, 2).injective.is_fails());
  const auto bad = mgw::endo_probe(grp("cyclic:3"), {w2("aa"), w2("a")}, 3);
  CHECK(bad.welldefined.is_fails());
  REQUIRE(bad.welldefined.witness.size() == 2);
}

TEST_CASE("index probe") {
  const auto ab = mgw::index_probe(grp("abelian:2"), {w2("aa"), w2("b")}, 3, 6);
  CHECK(ab.verdict.is_holds());
  CHECK(ab.cosets == 2);
  const auto all = mgw::index_probe(grp("lamplighter"), gens(2), 2);
  CHECK(all.verdict.is_holds());
  CHECK(all.cosets == 1);
  const auto f = mgw::index_probe(grp("free:2"), {w2("a")}, 5, 6);
  CHECK(f.verdict.is_fails());
  CHECK(f.verdict.level == ProbeVerdict::Level::AtScale);
  CHECK(f.cosets >= 5);
  CHECK_THROWS_AS(mgw::index_probe(grp("free:2"), {w2("a")}, 1), mgw::UsageError);
}

TEST_CASE("property: index verdicts are monotone in j") {
  for (const auto& [spec, A] : std::vector<std::pair<std::string, std::vector<Word>>>{
           {"abelian:2", {w2("aa"), w2("b")}},
           {"abelian:2", {w2("aaa"), w2("bb")}},
           {"cyclic:6", {w2("aa")}},
           {"symshift_fin:3", {w2("a")}}}) {
    bool held = false;
    std::size_t cosets = 0;
    for (int j = 2; j <= 10; ++j) {
      const auto r = mgw::index_probe(grp(spec), A, j);
      if (held) CHECK(r.verdict.is_holds());
      if (r.verdict.is_holds()) {
        if (held) CHECK(r.cosets == cosets);
        held = true;
        cosets = r.cosets;
      }
    }
    CHECK(held);
  }
}

TEST_CASE("local embedding check") {
  const mgw::WordMap identity = [](const Word& w) { return w; };
  const auto f = grp("free:2");
  CHECK(mgw::local_embedding_check(f, mgw::ball(f, 2).words, f, identity).is_holds());
  const auto sym = grp("symshift");
  CHECK(mgw::local_embedding_check(sym, mgw::ball(sym, 2).words, mgw::symshift_fin_group(7),
                                   identity)
            .is_holds());
  // a -> 1 collapses a and the identity
  const mgw::WordMap kill_a = [](const Word& w) {
    return mgw::substitute(w, std::vector<Word>{Word(2), w2("b")});
  };
  const auto v = mgw::local_embedding_check(f, mgw::ball(f, 1).words, f, kill_a);
  CHECK(v.is_fails());
  CHECK(v.witness.size() == 2);
  CHECK(v.level == ProbeVerdict::Level::Exact);
}
