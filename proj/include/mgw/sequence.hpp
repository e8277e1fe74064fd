#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace mgw {

// An eventually periodic element of 3^N: `prefix` followed by `tail`
// repeated forever. Stored canonically: the tail is primitive and the prefix
// is as short as possible, so equal sequences have equal text.
class TernarySequence {
 public:
  TernarySequence(std::string prefix, std::string tail);

  // Accepts PREFIX "(" TAIL ")" with PREFIX in {0,1,2}*, TAIL in {0,1,2}+.
  static TernarySequence parse(std::string_view text);

  const std::string& prefix() const noexcept { return prefix_; }
  const std::string& tail() const noexcept { return tail_; }

  int at(std::size_t i) const {
    const std::size_t p = prefix_.size();
    return (i < p ? prefix_[i] : tail_[(i - p) % tail_.size()]) - '0';
  }

  // Index of the shifted sequence tau^i(alpha) among the finitely many
  // distinct shifts; shifts with equal state are equal sequences.
  std::size_t state(std::size_t i) const {
    const std::size_t p = prefix_.size();
    return i < p ? i : p + (i - p) % tail_.size();
  }
  std::size_t state_count() const noexcept { return prefix_.size() + tail_.size(); }

  TernarySequence shift(std::size_t count = 1) const;

  std::string text() const;

  bool operator==(const TernarySequence&) const = default;

 private:
  std::string prefix_;
  std::string tail_;
};

struct SequenceClass {
  bool in_E = false;  // eventually constant
  bool in_I = false;  // infinitely many 0s, 1s and 2s
  bool in_C = true;   // recursive; every representable sequence is
};

SequenceClass classify(const TernarySequence& alpha);

// Length of the longest common prefix, capped at `cap` (equal sequences
// return `cap`).
std::size_t common_prefix_length(const TernarySequence& a, const TernarySequence& b,
                                 std::size_t cap);

}  // namespace mgw
