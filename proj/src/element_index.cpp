#include "mgw/element_index.hpp"

namespace mgw {

ElementIndex::ElementIndex(const MarkedGroup& g, bool use_fingerprints)
    : group_(&g), hashed_(use_fingerprints) {
  if (hashed_ && !g.fingerprint(Word(g.arity()))) hashed_ = false;
}

std::optional<std::uint64_t> ElementIndex::key(const Word& w) const {
  if (!hashed_) return std::nullopt;
  return group_->fingerprint(w);
}

bool ElementIndex::same(const Word& u, const Word& v) const {
  return require_certified(group_->equal(u, v), u * v.inverse(), group_->spec());
}

std::optional<std::size_t> ElementIndex::find(const Word& w,
                                              std::optional<std::uint64_t> key) const {
  if (key) {
    const auto it = buckets_.find(*key);
    if (it == buckets_.end()) return std::nullopt;
    for (const std::size_t id : it->second) {
      if (same(w, words_[id])) return id;
    }
    return std::nullopt;
  }
  for (std::size_t id = 0; id < words_.size(); ++id) {
    if (same(w, words_[id])) return id;
  }
  return std::nullopt;
}

std::pair<std::size_t, bool> ElementIndex::insert(const Word& w,
                                                  std::optional<std::uint64_t> key) {
  if (auto id = find(w, key)) return {*id, false};
  const std::size_t id = words_.size();
  words_.push_back(w);
  if (key) buckets_[*key].push_back(id);
  return {id, true};
}

}  // namespace mgw
