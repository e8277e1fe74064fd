#include "mgw/kernels.hpp"

#include <exception>

namespace mgw {

void parallel_for(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::size_t first_index = n;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(mgw_parallel_for_error)
      {
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first = std::current_exception();
        }
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

std::vector<Verdict> batch_verdicts(const MarkedGroup& g, std::span<const Word> words,
                                    Exec exec) {
  std::vector<Verdict> out(words.size());
  parallel_for(words.size(), exec, [&](std::size_t i) { out[i] = g.oracle(words[i]); });
  return out;
}

std::vector<std::optional<std::uint64_t>> batch_fingerprints(const MarkedGroup& g,
                                                             std::span<const Word> words,
                                                             Exec exec) {
  std::vector<std::optional<std::uint64_t>> out(words.size());
  parallel_for(words.size(), exec, [&](std::size_t i) { out[i] = g.fingerprint(words[i]); });
  return out;
}

}  // namespace mgw
