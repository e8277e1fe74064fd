#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mgw/oracles.hpp"

namespace mgw {

// Set of group elements keyed by representative words. Lookups compare only
// against entries with the same fingerprint, and every match is confirmed
// with the oracle, so a hash collision can never merge distinct elements.
// Without fingerprints every entry is compared. find() is safe to call from
// several threads while no insert() runs.
class ElementIndex {
 public:
  explicit ElementIndex(const MarkedGroup& g, bool use_fingerprints = true);

  std::optional<std::uint64_t> key(const Word& w) const;

  // Id of an entry equal to w in the group.
  std::optional<std::size_t> find(const Word& w) const { return find(w, key(w)); }
  std::optional<std::size_t> find(const Word& w, std::optional<std::uint64_t> key) const;

  // Adds w unless an equal element is present; returns (id, inserted).
  std::pair<std::size_t, bool> insert(const Word& w) { return insert(w, key(w)); }
  std::pair<std::size_t, bool> insert(const Word& w, std::optional<std::uint64_t> key);

  const Word& word(std::size_t id) const { return words_[id]; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  bool same(const Word& u, const Word& v) const;

  const MarkedGroup* group_;
  bool hashed_;
  std::vector<Word> words_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace mgw
