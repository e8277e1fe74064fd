#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mgw {

// A letter of F_n: +i stands for the i-th generator, -i for its inverse.
using Letter = std::int8_t;

inline constexpr int kMaxArity = 26;

// Rank in the letter order g1 < g1^-1 < g2 < g2^-1 < ...
constexpr int letter_rank(Letter x) {
  return 2 * ((x < 0 ? -x : x) - 1) + (x < 0 ? 1 : 0);
}

constexpr Letter letter_from_rank(int rank) {
  const int index = rank / 2 + 1;
  return static_cast<Letter>(rank % 2 == 0 ? index : -index);
}

// Freely reduced word of the free group on `arity` generators.
class Word {
 public:
  Word() = default;
  explicit Word(int arity);

  static Word generator(int arity, int index, bool inverted = false);

  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word power(long exponent) const;
  Word operator*(const Word& rhs) const;

  // Text form: `a`..`z` for generators, uppercase for inverses, `1` if empty.
  std::string text() const;

  bool operator==(const Word& rhs) const = default;
  // Length-lexicographic with the letter order above.
  std::strong_ordering operator<=>(const Word& rhs) const;

 private:
  friend Word free_reduce(int arity, std::span<const Letter> raw);

  int arity_ = 0;
  std::vector<Letter> letters_;
};

Word free_reduce(int arity, std::span<const Letter> raw);

Word parse_word(std::string_view text, int arity);

// Number of reduced words of length exactly `length`.
std::uint64_t count_reduced_words(int arity, int length);

// Every reduced word of length <= max_len, in length-lexicographic order.
std::vector<Word> enumerate_words(int arity, int max_len);

// Words of length exactly `length`, in lexicographic order.
std::vector<Word> enumerate_sphere(int arity, int length);

Word commutator(const Word& x, const Word& y);

// Left-normed [g_i1, ..., g_ik] with [x,y] = x y x^-1 y^-1.
Word simple_commutator(int arity, std::span<const int> indices);

// Reduced words of length <= max_len built as nested commutators of depth
// `degree`; all lie in the degree-th derived subgroup, but the stream is not
// exhaustive. Sorted length-lexicographically, deduplicated.
std::vector<Word> derived_witnesses(int arity, int degree, int max_len);

// Image of w under the endomorphism g_i -> images[i-1].
Word substitute(const Word& w, std::span<const Word> images);

std::vector<long> exponent_sums(const Word& w);

}  // namespace mgw
