#include "mgw/space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>

#include "mgw/element_index.hpp"
#include "mgw/error.hpp"
#include "mgw/grig_group.hpp"
#include "mgw/kernels.hpp"

namespace mgw {

std::size_t CayleyBall::edge_count() const {
  std::size_t count = 0;
  for (const auto& row : out) {
    count += static_cast<std::size_t>(std::count_if(
        row.begin(), row.end(), [](std::uint32_t t) { return t != kNoEdge; }));
  }
  return count;
}

CayleyBall CayleyBall::restrict(int k) const {
  if (k < 0 || k > radius) throw UsageError("restriction radius outside the ball");
  // Vertices are stored level by level, so the sub-ball is a prefix.
  const auto keep = static_cast<std::size_t>(
      std::upper_bound(distance.begin(), distance.end(), k) - distance.begin());
  CayleyBall b;
  b.arity = arity;
  b.radius = k;
  b.words.assign(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(keep));
  b.distance.assign(distance.begin(), distance.begin() + static_cast<std::ptrdiff_t>(keep));
  const auto clip = [keep](std::vector<std::uint32_t> row) {
    for (auto& t : row) {
      if (t != kNoEdge && t >= keep) t = kNoEdge;
    }
    return row;
  };
  for (std::size_t v = 0; v < keep; ++v) {
    b.out.push_back(clip(out[v]));
    b.in.push_back(clip(in[v]));
  }
  return b;
}

CayleyBall ball(const MarkedGroup& g, int radius, std::size_t vertex_budget,
                const BallOptions& options) {
  if (radius < 0) throw UsageError("radius must be >= 0");
  if (const auto lim = g.limit()) {
    return limit_ball(TernarySequence::parse(lim->sequence), lim->marking, radius,
                      lim->stability, lim->cap, vertex_budget, options)
        .ball;
  }
  const int n = g.arity();
  const Exec exec = options.parallel ? Exec::Parallel : Exec::Serial;
  const auto labels = static_cast<std::size_t>(n);

  CayleyBall b;
  b.arity = n;
  b.radius = radius;
  const auto add_vertex = [&](const Word& w, int dist) {
    if (b.words.size() >= vertex_budget) {
      throw ComputeError("ball of " + g.spec() + " at radius " + std::to_string(radius) +
                         " exceeds the vertex budget " + std::to_string(vertex_budget));
    }
    b.words.push_back(w);
    b.distance.push_back(dist);
    b.out.emplace_back(labels, kNoEdge);
    b.in.emplace_back(labels, kNoEdge);
  };

  // One index per level; a neighbour of a level-l vertex lies in level
  // l-1, l or l+1.
  std::vector<std::unique_ptr<ElementIndex>> levels;
  std::vector<std::size_t> start{0};
  levels.push_back(std::make_unique<ElementIndex>(g, options.use_fingerprints));
  levels[0]->insert(Word(n));
  add_vertex(Word(n), 0);

  std::vector<Word> gens;
  for (int r = 0; r < 2 * n; ++r) {
    const Letter x = letter_from_rank(r);
    gens.push_back(Word::generator(n, std::abs(x), x < 0));
  }

  for (int level = 0; level <= radius; ++level) {
    const std::size_t lo = start[static_cast<std::size_t>(level)];
    const std::size_t hi = b.words.size();
    start.push_back(hi);
    const std::size_t count = (hi - lo) * gens.size();

    std::vector<Word> cand(count);
    std::vector<std::optional<std::uint64_t>> keys(count);
    std::vector<std::size_t> found(count, kNoEdge);
    const ElementIndex& here = *levels[static_cast<std::size_t>(level)];
    const ElementIndex* below =
        level > 0 ? levels[static_cast<std::size_t>(level - 1)].get() : nullptr;
    parallel_for(count, exec, [&](std::size_t i) {
      const std::size_t v = lo + i / gens.size();
      cand[i] = b.words[v] * gens[i % gens.size()];
      keys[i] = here.key(cand[i]);
      if (below != nullptr) {
        if (auto id = below->find(cand[i], keys[i])) {
          found[i] = start[static_cast<std::size_t>(level - 1)] + *id;
          return;
        }
      }
      if (auto id = here.find(cand[i], keys[i])) found[i] = lo + *id;
    });

    if (level < radius) levels.push_back(std::make_unique<ElementIndex>(g, options.use_fingerprints));
    for (std::size_t i = 0; i < count; ++i) {
      if (found[i] == kNoEdge && level < radius) {
        const auto [id, inserted] = levels.back()->insert(cand[i], keys[i]);
        if (inserted) add_vertex(cand[i], level + 1);
        found[i] = hi + id;
      }
      if (found[i] == kNoEdge) continue;
      const std::size_t v = lo + i / gens.size();
      const Letter x = letter_from_rank(static_cast<int>(i % gens.size()));
      const auto label = static_cast<std::size_t>(std::abs(x) - 1);
      const auto target = static_cast<std::uint32_t>(found[i]);
      if (x > 0) {
        b.out[v][label] = target;
        b.in[target][label] = static_cast<std::uint32_t>(v);
      } else {
        b.in[v][label] = target;
        b.out[target][label] = static_cast<std::uint32_t>(v);
      }
    }
  }
  return b;
}

bool ball_isomorphic(const CayleyBall& b1, const CayleyBall& b2) {
  if (b1.radius != b2.radius) {
    throw UsageError("ball isomorphism needs equal radii (" + std::to_string(b1.radius) +
                     " vs " + std::to_string(b2.radius) + ")");
  }
  if (b1.arity != b2.arity || b1.size() != b2.size()) return false;
  const std::size_t n = b1.size();
  std::vector<std::uint32_t> map(n, kNoEdge);
  std::vector<bool> used(n, false);
  std::deque<std::uint32_t> queue{0};
  map[0] = 0;
  used[0] = true;
  const auto labels = static_cast<std::size_t>(b1.arity);
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    const std::uint32_t w = map[v];
    for (std::size_t i = 0; i < labels; ++i) {
      for (int side = 0; side < 2; ++side) {
        const std::uint32_t s = side == 0 ? b1.out[v][i] : b1.in[v][i];
        const std::uint32_t t = side == 0 ? b2.out[w][i] : b2.in[w][i];
        if ((s == kNoEdge) != (t == kNoEdge)) return false;
        if (s == kNoEdge) continue;
        if (map[s] == kNoEdge) {
          if (used[t]) return false;
          map[s] = t;
          used[t] = true;
          queue.push_back(s);
        } else if (map[s] != t) {
          return false;
        }
      }
    }
  }
  return std::all_of(used.begin(), used.end(), [](bool u) { return u; });
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffU));
}

}  // namespace

std::string canonical_certificate(const CayleyBall& b) {
  const std::size_t n = b.size();
  const auto labels = static_cast<std::size_t>(b.arity);
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> rank(n, kNoEdge);
  order.reserve(n);
  if (n > 0) {
    order.push_back(0);
    rank[0] = 0;
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::uint32_t v = order[head];
    for (std::size_t i = 0; i < labels; ++i) {
      for (const std::uint32_t t : {b.out[v][i], b.in[v][i]}) {
        if (t != kNoEdge && rank[t] == kNoEdge) {
          rank[t] = static_cast<std::uint32_t>(order.size());
          order.push_back(t);
        }
      }
    }
  }
  std::string out = "MGWB";
  out.push_back(1);  // format version
  put_u32(out, static_cast<std::uint32_t>(b.arity));
  put_u32(out, static_cast<std::uint32_t>(b.radius));
  put_u32(out, static_cast<std::uint32_t>(order.size()));
  for (const std::uint32_t v : order) {
    put_u32(out, static_cast<std::uint32_t>(b.distance[v]));
    for (std::size_t i = 0; i < labels; ++i) {
      const std::uint32_t t = b.out[v][i];
      put_u32(out, t == kNoEdge ? kNoEdge : rank[t]);
    }
  }
  return out;
}

std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (const char c : bytes) {
    const auto u = static_cast<unsigned char>(c);
    out.push_back(kDigits[u >> 4]);
    out.push_back(kDigits[u & 0xfU]);
  }
  return out;
}

RelationSet relation_set(const MarkedGroup& g, int k, bool parallel) {
  if (k < 0) throw UsageError("relation length must be >= 0");
  const std::vector<Word> words = enumerate_words(g.arity(), k);
  const auto verdicts = batch_verdicts(g, words, parallel ? Exec::Parallel : Exec::Serial);
  RelationSet out{k, {}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (require_certified(verdicts[i], words[i], g.spec())) out.members.push_back(words[i]);
  }
  return out;
}

std::string to_string(const DistanceValue& d) {
  return std::string(d.is_exact() ? "Exact" : "AtMost") + "(2^-" + std::to_string(d.exponent) +
         ")";
}

namespace {

void check_pair(const MarkedGroup& g1, const MarkedGroup& g2, int resolution) {
  if (g1.arity() != g2.arity()) {
    throw UsageError("distance needs equal arities (" + g1.spec() + " has " +
                     std::to_string(g1.arity()) + ", " + g2.spec() + " has " +
                     std::to_string(g2.arity()) + ")");
  }
  if (resolution < 1) throw UsageError("resolution must be >= 1");
}

// Index of the first word whose certified verdicts differ, if any.
std::optional<std::size_t> first_difference(const MarkedGroup& g1, const MarkedGroup& g2,
                                            const std::vector<Word>& words) {
  const auto v1 = batch_verdicts(g1, words, Exec::Parallel);
  const auto v2 = batch_verdicts(g2, words, Exec::Parallel);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const bool t1 = require_certified(v1[i], words[i], g1.spec());
    const bool t2 = require_certified(v2[i], words[i], g2.spec());
    if (t1 != t2) return i;
  }
  return std::nullopt;
}

}  // namespace

DistanceValue nu_distance(const MarkedGroup& g1, const MarkedGroup& g2, int resolution) {
  check_pair(g1, g2, resolution);
  for (int len = 1; len <= resolution; ++len) {
    if (first_difference(g1, g2, enumerate_sphere(g1.arity(), len))) {
      return DistanceValue::exact(len - 1);
    }
  }
  return DistanceValue::at_most(resolution);
}

DistanceValue mu_distance(const MarkedGroup& g1, const MarkedGroup& g2, int resolution) {
  check_pair(g1, g2, resolution);
  for (int k = 1; k <= resolution; ++k) {
    if (!ball_isomorphic(ball(g1, k), ball(g2, k))) return DistanceValue::exact(k - 1);
  }
  return DistanceValue::at_most(resolution);
}

DistanceValue d_distance(const MarkedGroup& g1, const MarkedGroup& g2, int resolution) {
  check_pair(g1, g2, resolution);
  int len = 0;
  std::uint64_t total = 1;
  while (total <= static_cast<std::uint64_t>(resolution)) {
    ++len;
    total += count_reduced_words(g1.arity(), len);
  }
  std::vector<Word> words = enumerate_words(g1.arity(), len);
  words.resize(static_cast<std::size_t>(resolution) + 1);
  if (const auto i = first_difference(g1, g2, words)) {
    return DistanceValue::exact(static_cast<int>(*i));
  }
  return DistanceValue::at_most(resolution);
}

std::vector<std::uint64_t> growth(const MarkedGroup& g, int max_radius,
                                  std::size_t vertex_budget, const BallOptions& options) {
  const CayleyBall b = ball(g, max_radius, vertex_budget, options);
  std::vector<std::uint64_t> table(static_cast<std::size_t>(max_radius) + 1, 0);
  for (const int d : b.distance) ++table[static_cast<std::size_t>(d)];
  for (std::size_t x = 1; x < table.size(); ++x) table[x] += table[x - 1];
  return table;
}

namespace {

constexpr double kMargin = 0.5;

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

}  // namespace

GrowthReport growth_classify(const std::vector<std::uint64_t>& table) {
  if (table.size() < 4) throw UsageError("growth_classify needs Gamma(0..X) with X >= 3");
  GrowthReport r;
  r.note = "finite-scale evidence, not a classification";
  const std::size_t X = table.size() - 1;

  r.a_star = INFINITY;
  for (std::size_t x = 1; x <= X; ++x) {
    r.a_star = std::min(r.a_star, std::pow(static_cast<double>(table[x]), 1.0 / x));
  }

  std::vector<double> sphere(X + 1, 0);
  sphere[0] = 1;
  for (std::size_t x = 1; x <= X; ++x) {
    sphere[x] = static_cast<double>(table[x]) - static_cast<double>(table[x - 1]);
  }
  const std::size_t lo = std::max<std::size_t>(2, (X + 1) / 2);
  bool vanishing = false;
  for (std::size_t x = lo - 1; x <= X; ++x) vanishing = vanishing || sphere[x] == 0;

  if (vanishing) {
    r.slope = 0;
    r.min_tail_ratio = 0;
    r.polynomial_consistent = true;
    r.exponential_consistent = false;
    return r;
  }

  std::vector<double> lx, ls, xs, local;
  r.min_tail_ratio = INFINITY;
  for (std::size_t x = lo; x <= X; ++x) {
    const double xd = static_cast<double>(x);
    lx.push_back(std::log(xd));
    ls.push_back(std::log(sphere[x]));
    const double ratio = sphere[x] / sphere[x - 1];
    r.min_tail_ratio = std::min(r.min_tail_ratio, ratio);
    // Local degree of the sphere function between x-1 and x.
    xs.push_back(xd);
    local.push_back(std::log(ratio) / std::log(xd / (xd - 1)));
  }
  r.slope = 1 + ls_slope(lx, ls);
  r.exponential_consistent = r.a_star > 1 + kMargin && r.min_tail_ratio > 1 + kMargin;
  // Polynomial growth keeps the local degree bounded; exponential growth
  // makes it rise linearly.
  r.polynomial_consistent = ls_slope(xs, local) <= kMargin / 2;
  return r;
}

ConvergeTable converge_table(const std::vector<MarkedGroup>& terms, const MarkedGroup& limit,
                             int resolution) {
  ConvergeTable t;
  for (const MarkedGroup& g : terms) t.distances.push_back(mu_distance(g, limit, resolution));
  for (std::size_t i = 1; i < t.distances.size(); ++i) {
    // AtMost(2^-R) bounds the distance by 2^-R, below every Exact value.
    const int prev = t.distances[i - 1].exponent;
    const int cur = t.distances[i].exponent;
    if (cur < prev) t.nonincreasing = false;
    if (cur <= prev) t.strictly_decreasing = false;
  }
  return t;
}

}  // namespace mgw
