#include "mgw/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgw/error.hpp"

namespace mgw {

Json ball_to_json(const CayleyBall& b) {
  Json j;
  j["arity"] = b.arity;
  j["radius"] = b.radius;
  Json vertices = Json::array();
  for (std::size_t v = 0; v < b.size(); ++v) {
    vertices.push_back({{"id", v}, {"distance", b.distance[v]}, {"word", b.words[v].text()}});
  }
  j["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (std::size_t v = 0; v < b.size(); ++v) {
    for (std::size_t i = 0; i < b.out[v].size(); ++i) {
      if (b.out[v][i] == kNoEdge) continue;
      edges.push_back({{"from", v}, {"label", i + 1}, {"to", b.out[v][i]}});
    }
  }
  j["edges"] = std::move(edges);
  j["certificate_hex"] = to_hex(canonical_certificate(b));
  return j;
}

CayleyBall ball_from_json(const Json& j) {
  try {
    CayleyBall b;
    b.arity = j.at("arity").get<int>();
    b.radius = j.at("radius").get<int>();
    const auto labels = static_cast<std::size_t>(b.arity);
    for (const auto& v : j.at("vertices")) {
      if (v.at("id").get<std::size_t>() != b.words.size()) {
        throw UsageError("ball vertices out of order");
      }
      b.words.push_back(parse_word(v.at("word").get<std::string>(), b.arity));
      b.distance.push_back(v.at("distance").get<int>());
      b.out.emplace_back(labels, kNoEdge);
      b.in.emplace_back(labels, kNoEdge);
    }
    for (const auto& e : j.at("edges")) {
      const auto from = e.at("from").get<std::uint32_t>();
      const auto to = e.at("to").get<std::uint32_t>();
      const auto label = e.at("label").get<std::size_t>();
      if (from >= b.size() || to >= b.size() || label < 1 || label > labels) {
        throw UsageError("ball edge out of range");
      }
      b.out[from][label - 1] = to;
      b.in[to][label - 1] = from;
    }
    if (j.contains("certificate_hex") &&
        j["certificate_hex"].get<std::string>() != to_hex(canonical_certificate(b))) {
      throw UsageError("ball JSON certificate does not match its graph");
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed ball JSON: ") + e.what());
  }
}

std::string ball_to_dot(const CayleyBall& b) {
  std::ostringstream os;
  os << "digraph ball {\n";
  for (std::size_t v = 0; v < b.size(); ++v) {
    os << "  v" << v << " [label=\"" << b.words[v].text() << "\"";
    if (v == 0) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (std::size_t v = 0; v < b.size(); ++v) {
    for (std::size_t i = 0; i < b.out[v].size(); ++i) {
      if (b.out[v][i] == kNoEdge) continue;
      os << "  v" << v << " -> v" << b.out[v][i] << " [label=\"g" << i + 1 << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string growth_to_csv(const std::vector<std::uint64_t>& table) {
  std::string out = "x,gamma\n";
  for (std::size_t x = 0; x < table.size(); ++x) {
    out += std::to_string(x) + "," + std::to_string(table[x]) + "\n";
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::filesystem::path BallCache::entry_path(const std::string& spec, int radius) const {
  return root_ / "balls" / hex64(fnv1a(spec.data(), spec.size())) /
         (std::to_string(radius) + ".json");
}

std::optional<CayleyBall> BallCache::load(const std::string& spec, int radius) const {
  std::ifstream in(entry_path(spec, radius));
  if (!in) return std::nullopt;
  const Json j = Json::parse(in, nullptr, false);
  // Stale or foreign entries are ignored and later overwritten.
  if (j.is_discarded() || !j.is_object() || j.value("version", 0) != kCacheVersion ||
      j.value("spec", std::string()) != spec || j.value("radius", -1) != radius ||
      !j.contains("ball")) {
    return std::nullopt;
  }
  try {
    CayleyBall b = ball_from_json(j.at("ball"));
    if (to_hex(canonical_certificate(b)) != j.at("ball").value("certificate_hex", "")) {
      return std::nullopt;
    }
    return b;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void BallCache::store(const std::string& spec, int radius, const CayleyBall& b) const {
  const auto path = entry_path(spec, radius);
  std::filesystem::create_directories(path.parent_path());
  Json j;
  j["version"] = kCacheVersion;
  j["spec"] = spec;
  j["radius"] = radius;
  j["ball"] = ball_to_json(b);
  // Write then rename so readers never see a partial file.
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ComputeError("cannot write cache entry " + tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mgw
