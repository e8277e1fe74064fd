#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mgw/oracles.hpp"
#include "mgw/words.hpp"

namespace mgw {

inline constexpr std::uint32_t kNoEdge = 0xffffffffU;

// Rooted, edge-labelled ball B[N,k]. Vertex 0 is the root. Edges are stored
// per positive label: out[v][i] = v * g_(i+1), in[v][i] = v * g_(i+1)^-1,
// kNoEdge when the neighbour lies outside the ball.
struct CayleyBall {
  int arity = 0;
  int radius = 0;
  std::vector<Word> words;  // a shortest representative per vertex
  std::vector<int> distance;
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::vector<std::uint32_t>> in;

  std::size_t size() const noexcept { return words.size(); }
  std::size_t edge_count() const;
  // Induced sub-ball of the vertices at distance <= k.
  CayleyBall restrict(int k) const;
};

struct BallOptions {
  // Hash prefilter with oracle-verified merges; off means every candidate is
  // compared to every vertex of the neighbouring levels with the oracle.
  bool use_fingerprints = true;
  bool parallel = true;
};

inline constexpr std::size_t kDefaultVertexBudget = 2'000'000;

CayleyBall ball(const MarkedGroup& g, int radius,
                std::size_t vertex_budget = kDefaultVertexBudget,
                const BallOptions& options = {});

bool ball_isomorphic(const CayleyBall& b1, const CayleyBall& b2);

// Canonical byte string: equal iff the balls are isomorphic.
std::string canonical_certificate(const CayleyBall& b);
std::string to_hex(const std::string& bytes);

struct RelationSet {
  int k = 0;
  std::vector<Word> members;  // length-lexicographic
};

RelationSet relation_set(const MarkedGroup& g, int k, bool parallel = true);

// Exact(2^-k) or AtMost(2^-k). Zero is never reported.
struct DistanceValue {
  enum class Kind { Exact, AtMost };
  Kind kind = Kind::AtMost;
  int exponent = 0;

  static DistanceValue exact(int e) { return {Kind::Exact, e}; }
  static DistanceValue at_most(int e) { return {Kind::AtMost, e}; }
  bool is_exact() const noexcept { return kind == Kind::Exact; }
  bool operator==(const DistanceValue&) const = default;
};

std::string to_string(const DistanceValue& d);

DistanceValue nu_distance(const MarkedGroup& g1, const MarkedGroup& g2, int resolution);
DistanceValue mu_distance(const MarkedGroup& g1, const MarkedGroup& g2, int resolution);
DistanceValue d_distance(const MarkedGroup& g1, const MarkedGroup& g2, int resolution);

// Gamma(0..X).
std::vector<std::uint64_t> growth(const MarkedGroup& g, int max_radius,
                                  std::size_t vertex_budget = kDefaultVertexBudget,
                                  const BallOptions& options = {});

struct GrowthReport {
  double a_star = 0;  // min over x >= 1 of Gamma(x)^(1/x)
  double slope = 0;   // log-log degree estimate from the tail
  double min_tail_ratio = 0;
  bool exponential_consistent = false;
  bool polynomial_consistent = false;
  std::string note;
};

GrowthReport growth_classify(const std::vector<std::uint64_t>& table);

struct ConvergeTable {
  std::vector<DistanceValue> distances;
  bool nonincreasing = true;
  bool strictly_decreasing = true;
};

ConvergeTable converge_table(const std::vector<MarkedGroup>& terms, const MarkedGroup& limit,
                             int resolution);

}  // namespace mgw
