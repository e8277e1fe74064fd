#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "mgw/verdict.hpp"
#include "mgw/words.hpp"

namespace mgw {

struct ClosureOptions {
  // Relator conjugates u r u^-1 are tried for |u| <= conjugator_length, on
  // top of inserting cyclic rotations of r^(+-1) at every position.
  int conjugator_length = 0;
  // Longest intermediate word; 0 picks |w| + the longest relator.
  std::size_t max_length = 0;
};

// Semi-decides w in the normal closure of `relators` by breadth-first search
// over the number of inserted relator conjugates. Returns Trivial with a
// certificate found, otherwise Unknown; never Nontrivial. `budget` counts
// generated search states.
Verdict closure_member(std::span<const Word> relators, const Word& w,
                       std::uint64_t budget, const ClosureOptions& options = {});

}  // namespace mgw
