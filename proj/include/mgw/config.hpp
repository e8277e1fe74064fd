#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "mgw/serialize.hpp"

namespace mgw {

// Budgets and defaults shared by all subcommands. Read from `key = value`
// lines; command-line flags override file values.
struct Config {
  std::string cache_dir;
  std::size_t vertex_budget = 2'000'000;
  std::uint64_t order_budget = 1'000'000;
  int index_witness_len = 0;  // 0: derived from the subgroup and j
  std::uint64_t closure_budget = 200'000;
  int limit_stability = 3;
  int limit_cap = 12;
  int max_resolution = 12;
  std::uint64_t seed = 20240101;
  int threads = 0;  // 0: OpenMP default

  void set(const std::string& key, const std::string& value);
  void load_file(const std::string& path);

  // Settings that can influence results. Thread count and cache location
  // are left out: output must not depend on them.
  Json echo() const;
};

}  // namespace mgw
