#include "mgw/hierarchy.hpp"

#include <algorithm>
#include <bit>
#include <memory>

#include "mgw/error.hpp"
#include "mgw/grig_group.hpp"

namespace mgw {

std::string to_string(ReductionMode mode) {
  return mode == ReductionMode::Direct ? "direct" : "limit";
}

ReductionMode parse_mode(const std::string& text) {
  if (text == "direct") return ReductionMode::Direct;
  if (text == "limit") return ReductionMode::Limit;
  throw UsageError("mode must be direct or limit, got " + text);
}

ReductionMode default_mode(const TernarySequence& alpha) {
  return classify(alpha).in_E ? ReductionMode::Limit : ReductionMode::Direct;
}

int fingerprint_depth_for(int radius) {
  const auto span = static_cast<unsigned>(std::max(2 * radius + 1, 2));
  return static_cast<int>(std::bit_width(span - 1)) + 2;
}

Reduction reduce(const ReductionPoint& point, int radius, std::size_t vertex_budget) {
  if (radius < 0) throw UsageError("radius must be >= 0");
  if (point.mode == ReductionMode::Limit) {
    LimitBall lb = limit_ball(point.alpha, point.marking, radius, 3, 12, vertex_budget);
    return {std::move(lb.ball), lb.reads, lb.approximant};
  }
  GrigOptions options;
  options.fingerprint_depth = fingerprint_depth_for(radius);
  options.reads = std::make_shared<grig::ReadTracker>();
  const MarkedGroup g = point.marking == Marking::G4 ? marked_G4(point.alpha, options)
                                                     : marked_L2(point.alpha, options);
  CayleyBall b = ball(g, radius, vertex_budget);
  return {std::move(b), options.reads->reads(), 0};
}

ContinuityTable continuity_experiment(
    const std::vector<std::pair<TernarySequence, TernarySequence>>& pairs, Marking marking,
    int resolution) {
  if (resolution < 1) throw UsageError("resolution must be >= 1");
  constexpr std::size_t kPrefixCap = 1 << 20;
  ContinuityTable table;
  for (const auto& [alpha, beta] : pairs) {
    if (alpha == beta) {
      throw UsageError("continuity pairs must differ, got " + alpha.text() + " twice");
    }
    ContinuityRow row;
    row.alpha = alpha.text();
    row.beta = beta.text();
    row.prefix = common_prefix_length(alpha, beta, kPrefixCap);
    row.mu = DistanceValue::at_most(resolution);
    const ReductionPoint pa{alpha, marking, default_mode(alpha)};
    const ReductionPoint pb{beta, marking, default_mode(beta)};
    for (int k = 1; k <= resolution; ++k) {
      if (!ball_isomorphic(reduce(pa, k).ball, reduce(pb, k).ball)) {
        row.mu = DistanceValue::exact(k - 1);
        break;
      }
    }
    const int bound = static_cast<int>((row.prefix - 1) / 2);
    row.within_bound = row.mu.exponent >= bound;
    table.rows.push_back(std::move(row));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ContinuityRow& a, const ContinuityRow& b) { return a.prefix < b.prefix; });
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.all_within_bound = table.all_within_bound && table.rows[i].within_bound;
    if (i > 0 && table.rows[i].mu.exponent < table.rows[i - 1].mu.exponent) {
      table.nonincreasing = false;
    }
  }
  return table;
}

ExpectationReport expectation_report(const TernarySequence& alpha, Marking marking,
                                     const ExpectationScales& scales) {
  ExpectationReport r{alpha, marking, classify(alpha), {}, {}, {}, {}, {}, {}};
  r.predicted.periodic = r.cls.in_I;
  r.predicted.growth = r.cls.in_E ? "exponential" : "intermediate";
  r.predicted.solvable = r.cls.in_E;
  r.predicted.decidable = r.cls.in_C;

  const MarkedGroup g = marking == Marking::G4 ? marked_G4(alpha) : marked_L2(alpha);
  try {
    r.torsion = torsion_probe(g, scales.torsion_len, scales.order_budget);
    r.solvable = solvable_degree_probe(g, scales.solvable_k, scales.solvable_len);
    r.growth = growth(g, scales.growth_x);
    r.growth_report = growth_classify(r.growth);
  } catch (const ComputeError& e) {
    r.contradictions.push_back(std::string("decidable word problem predicted, but ") + e.what());
    return r;
  }

  if (r.predicted.periodic) {
    for (const TorsionEntry& e : r.torsion.entries) {
      if (e.order.certified_infinite) {
        r.contradictions.push_back("periodic predicted, but " + e.element.text() +
                                   " has certified infinite order");
      }
    }
  }
  return r;
}

}  // namespace mgw
