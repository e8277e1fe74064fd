#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mgw/sequence.hpp"
#include "mgw/verdict.hpp"

namespace mgw::grig {

// Word over {a,b,c,d} in canonical alternating form: no `aa`, no two adjacent
// letters from {b,c,d} (those multiply through the Klein table bc = d etc.).
// The same rewriting holds in every G_alpha.
class GrigWord {
 public:
  GrigWord() = default;

  // Reduces any string over {a,b,c,d}; "1" denotes the identity.
  static GrigWord reduce(std::string_view raw);

  const std::string& letters() const noexcept { return letters_; }
  std::string text() const { return letters_.empty() ? "1" : letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  // Every generator is an involution, so the inverse is the reversal.
  GrigWord inverse() const;
  GrigWord power(std::uint64_t exponent) const;
  GrigWord operator*(const GrigWord& rhs) const;

  std::size_t a_count() const;
  // True iff the word swaps the two subtrees below the root.
  bool root_swap() const { return a_count() % 2 == 1; }

  bool operator==(const GrigWord&) const = default;
  auto operator<=>(const GrigWord&) const = default;

 private:
  std::string letters_;
};

// Counts how many symbols of alpha a computation looked at (one past the
// largest index read). Safe to share between threads.
class ReadTracker {
 public:
  void note(std::size_t index) noexcept {
    const std::size_t want = index + 1;
    std::size_t cur = reads_.load(std::memory_order_relaxed);
    while (cur < want &&
           !reads_.compare_exchange_weak(cur, want, std::memory_order_relaxed)) {
    }
  }
  std::size_t reads() const noexcept { return reads_.load(std::memory_order_relaxed); }
  void reset() noexcept { reads_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::size_t> reads_{0};
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Sections below vertices 0 and 1 (words over the generators of
// G_{tau alpha}) and the root permutation, for the left-to-right action
// w(xv) = sigma(x) w_x(v).
struct Decomposition {
  GrigWord first;
  GrigWord second;
  bool swap = false;
};

Decomposition wreath_decompose(const GrigWord& w, const TernarySequence& alpha);
// Same decomposition at the shifted sequence tau^position(alpha).
Decomposition wreath_decompose_at(const GrigWord& w, const TernarySequence& alpha,
                                  std::size_t position, ReadTracker* reads = nullptr);

Verdict is_trivial(const TernarySequence& alpha, const GrigWord& w,
                   std::uint64_t budget = kDefaultBudget, ReadTracker* reads = nullptr);

// Image of the vertex (a string over {0,1}) under w acting on the left.
std::string act(const TernarySequence& alpha, const GrigWord& w, std::string_view vertex);

// Least m with w^m trivial, verified minimal by checking w^(m/p) for every
// prime p | m. ExceedsBudget if the recursion outgrows `budget` nodes or the
// order exceeds `budget`; certified_infinite when a doubling cycle was found.
OrderResult order(const TernarySequence& alpha, const GrigWord& w,
                  std::uint64_t budget = 1'000'000, ReadTracker* reads = nullptr);

// Permutations of the 2^depth vertices of one tree level (vertex bits are
// little-endian: bit i is the i-th letter) induced by a, b, c, d.
class LevelAction {
 public:
  LevelAction(const TernarySequence& alpha, int depth, ReadTracker* reads = nullptr);

  int depth() const noexcept { return depth_; }
  // Action of w on the level as a permutation (image of each vertex).
  std::vector<std::uint32_t> permutation(const GrigWord& w) const;
  std::uint64_t fingerprint(const GrigWord& w) const;

 private:
  int depth_;
  std::vector<std::uint32_t> generators_[4];
};

}  // namespace mgw::grig
