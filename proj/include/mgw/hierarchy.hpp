#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgw/oracles.hpp"
#include "mgw/probes.hpp"
#include "mgw/sequence.hpp"
#include "mgw/space.hpp"

namespace mgw {

// Direct: the tree group G_alpha itself. Limit: the limit point replacing
// it at eventually constant alpha.
enum class ReductionMode { Direct, Limit };

std::string to_string(ReductionMode mode);
ReductionMode parse_mode(const std::string& text);
// Limit for eventually constant sequences, Direct otherwise.
ReductionMode default_mode(const TernarySequence& alpha);

struct ReductionPoint {
  TernarySequence alpha;
  Marking marking = Marking::G4;
  ReductionMode mode = ReductionMode::Direct;
};

struct Reduction {
  CayleyBall ball;
  std::size_t reads = 0;  // symbols of alpha the computation looked at
  int approximant = 0;    // limit mode only
};

// Tree level used for fingerprints at radius k: enough to separate words of
// length 2k+1 without reading far into alpha.
int fingerprint_depth_for(int radius);

Reduction reduce(const ReductionPoint& point, int radius,
                 std::size_t vertex_budget = kDefaultVertexBudget);

struct ContinuityRow {
  std::string alpha;
  std::string beta;
  std::size_t prefix = 0;  // common prefix length n
  DistanceValue mu;
  bool within_bound = false;  // mu <= 2^-floor((n-1)/2)
};

struct ContinuityTable {
  std::vector<ContinuityRow> rows;  // sorted by prefix length
  bool nonincreasing = true;
  bool all_within_bound = true;
};

ContinuityTable continuity_experiment(
    const std::vector<std::pair<TernarySequence, TernarySequence>>& pairs, Marking marking,
    int resolution);

struct ExpectationScales {
  int torsion_len = 4;
  std::uint64_t order_budget = 8192;
  int solvable_k = 2;
  int solvable_len = 16;
  int growth_x = 8;
};

struct Prediction {
  bool periodic = false;
  std::string growth;  // "exponential" or "intermediate"
  bool solvable = false;
  bool decidable = true;
};

struct ExpectationReport {
  TernarySequence alpha;
  Marking marking = Marking::G4;
  SequenceClass cls;
  Prediction predicted;
  TorsionReport torsion;
  ProbeVerdict solvable;
  std::vector<std::uint64_t> growth;
  GrowthReport growth_report;
  std::vector<std::string> contradictions;

  bool agreement() const { return contradictions.empty(); }
};

// Predictions come from the sequence class alone; observations are taken on
// the direct group. Only certified witnesses can contradict a prediction.
ExpectationReport expectation_report(const TernarySequence& alpha, Marking marking,
                                     const ExpectationScales& scales = {});

}  // namespace mgw
