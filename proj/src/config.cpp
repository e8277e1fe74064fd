#include "mgw/config.hpp"

#include <charconv>
#include <fstream>

#include "mgw/error.hpp"

namespace mgw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T positive(const std::string& key, const std::string& value, bool allow_zero = false) {
  T out{};
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || end != value.data() + value.size() || out < 0 ||
      (out == 0 && !allow_zero)) {
    throw UsageError("config key " + key + " needs a positive integer, got '" + value + "'");
  }
  return out;
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (key == "cache_dir") {
    cache_dir = value;
  } else if (key == "vertex_budget") {
    vertex_budget = positive<std::size_t>(key, value);
  } else if (key == "order_budget") {
    order_budget = positive<std::uint64_t>(key, value);
  } else if (key == "index_witness_len") {
    index_witness_len = positive<int>(key, value, true);
  } else if (key == "closure_budget") {
    closure_budget = positive<std::uint64_t>(key, value);
  } else if (key == "limit_stability") {
    limit_stability = positive<int>(key, value);
    if (limit_stability < 2) throw UsageError("limit_stability must be >= 2");
  } else if (key == "limit_cap") {
    limit_cap = positive<int>(key, value);
  } else if (key == "max_resolution") {
    max_resolution = positive<int>(key, value);
  } else if (key == "seed") {
    seed = positive<std::uint64_t>(key, value, true);
  } else if (key == "threads") {
    threads = positive<int>(key, value);
  } else {
    throw UsageError("unknown config key " + key);
  }
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

Json Config::echo() const {
  Json j;
  j["vertex_budget"] = vertex_budget;
  j["order_budget"] = order_budget;
  j["index_witness_len"] = index_witness_len;
  j["closure_budget"] = closure_budget;
  j["limit_stability"] = limit_stability;
  j["limit_cap"] = limit_cap;
  j["max_resolution"] = max_resolution;
  j["seed"] = seed;
  return j;
}

}  // namespace mgw
