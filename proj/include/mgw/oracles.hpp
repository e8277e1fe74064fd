#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgw/verdict.hpp"
#include "mgw/words.hpp"

namespace mgw {

enum class Marking { G4, L2 };

std::string to_string(Marking marking);

// Identifies a limit point of the Grigorchuk family; such groups only answer
// ball-level queries.
struct LimitDescriptor {
  std::string sequence;  // canonical sequence text
  Marking marking = Marking::G4;
  int stability = 3;     // consecutive equal approximant balls required
  int cap = 12;          // largest approximant index tried
};

// Word-problem decision procedure for one normal subgroup N of F_n.
// Implementations must be re-entrant: they are called from many threads.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  // `w` is reduced and of the right arity.
  virtual Verdict decide(const Word& w) const = 0;

  // A hash that only depends on the element wN. Distinct fingerprints prove
  // distinct elements; equal fingerprints still need an oracle check.
  virtual std::optional<std::uint64_t> fingerprint(const Word& w) const;

  // Default: successive powers checked with decide().
  virtual OrderResult order(const Word& w, std::uint64_t budget) const;

  // True when decide() never answers Unknown.
  virtual bool exact() const { return true; }

  virtual std::optional<LimitDescriptor> limit() const { return std::nullopt; }
};

// A point of the space of n-marked groups.
class MarkedGroup {
 public:
  MarkedGroup(int arity, std::string spec, std::shared_ptr<const GroupOracle> impl);

  int arity() const noexcept { return arity_; }
  const std::string& spec() const noexcept { return spec_; }

  Verdict oracle(const Word& w) const;
  // Decides u = v in the group.
  Verdict equal(const Word& u, const Word& v) const;
  std::optional<std::uint64_t> fingerprint(const Word& w) const;
  OrderResult order(const Word& w, std::uint64_t budget) const;
  bool exact() const { return impl_->exact(); }
  std::optional<LimitDescriptor> limit() const { return impl_->limit(); }

  const std::shared_ptr<const GroupOracle>& impl() const noexcept { return impl_; }

 private:
  void check(const Word& w) const;

  int arity_;
  std::string spec_;
  std::shared_ptr<const GroupOracle> impl_;
};

// The marked subgroup generated by `marks` (words in g's generators).
MarkedGroup remark(const MarkedGroup& g, std::vector<Word> marks);

// Throws ComputeError naming `w` when the verdict is Unknown.
bool require_certified(const Verdict& v, const Word& w, const std::string& spec);

// 64-bit FNV-1a, used for fingerprints and cache keys.
std::uint64_t fnv1a(const void* data, std::size_t size,
                    std::uint64_t seed = 14695981039346656037ULL);

template <class T>
std::uint64_t fnv1a_values(std::span<const T> values,
                           std::uint64_t seed = 14695981039346656037ULL) {
  return fnv1a(values.data(), values.size_bytes(), seed);
}

}  // namespace mgw
