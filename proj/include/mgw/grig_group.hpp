#pragma once

#include <cstddef>
#include <memory>

#include "mgw/grigorchuk.hpp"
#include "mgw/oracles.hpp"
#include "mgw/space.hpp"

namespace mgw {

struct GrigOptions {
  // Tree level used for ball fingerprints; reads depth-1 symbols of alpha.
  int fingerprint_depth = 8;
  std::shared_ptr<grig::ReadTracker> reads;
};

// g1..g4 -> a, b, c, d.
MarkedGroup marked_G4(const TernarySequence& alpha, const GrigOptions& options = {});
// g1 -> d, g2 -> ab.
MarkedGroup marked_L2(const TernarySequence& alpha, const GrigOptions& options = {});
// Limit point at an eventually constant sequence; only ball-level queries.
MarkedGroup marked_limit(const TernarySequence& alpha, Marking marking, int stability = 3,
                         int cap = 12);

grig::GrigWord to_grig_word(const Word& w, Marking marking);

struct LimitBall {
  CayleyBall ball;
  int approximant = 0;  // m of the approximant whose ball was returned
  std::size_t reads = 0;
};

// Ball of the limit point: approximants prefix + c^m + (012) for m = k+1, ...
// until `stability` consecutive ones give the same certificate.
LimitBall limit_ball(const TernarySequence& alpha, Marking marking, int radius,
                     int stability = 3, int cap = 12,
                     std::size_t vertex_budget = kDefaultVertexBudget,
                     const BallOptions& options = {});

}  // namespace mgw
