#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mgw/oracles.hpp"

namespace mgw {

// Serial is the reference path; Parallel must produce identical results.
enum class Exec { Serial, Parallel };

// Runs body(i) for i in [0, n). With Parallel the iterations are spread over
// OpenMP threads; if any throw, the exception of the lowest index is
// rethrown after the loop.
void parallel_for(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

std::vector<Verdict> batch_verdicts(const MarkedGroup& g, std::span<const Word> words,
                                    Exec exec);

std::vector<std::optional<std::uint64_t>> batch_fingerprints(const MarkedGroup& g,
                                                             std::span<const Word> words,
                                                             Exec exec);

}  // namespace mgw
