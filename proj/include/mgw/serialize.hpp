#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgw/oracles.hpp"
#include "mgw/space.hpp"

namespace mgw {

using Json = nlohmann::ordered_json;

inline constexpr int kCacheVersion = 1;

Json ball_to_json(const CayleyBall& b);
CayleyBall ball_from_json(const Json& j);
// Edge labels g1..gn; node labels are representative words.
std::string ball_to_dot(const CayleyBall& b);
// "x,gamma" header followed by one row per radius.
std::string growth_to_csv(const std::vector<std::uint64_t>& table);

std::string hex64(std::uint64_t v);

// <root>/balls/<fnv1a of spec, hex>/<radius>.json
class BallCache {
 public:
  explicit BallCache(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path entry_path(const std::string& spec, int radius) const;
  std::optional<CayleyBall> load(const std::string& spec, int radius) const;
  void store(const std::string& spec, int radius, const CayleyBall& b) const;

 private:
  std::filesystem::path root_;
};

}  // namespace mgw
