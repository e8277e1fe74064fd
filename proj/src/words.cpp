#include "mgw/words.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mgw/error.hpp"

namespace mgw {

namespace {

void check_arity(int arity) {
  if (arity < 0 || arity > kMaxArity) {
    throw UsageError("arity " + std::to_string(arity) + " outside [0, 26]");
  }
}

}  // namespace

Word::Word(int arity) : arity_(arity) { check_arity(arity); }

Word Word::generator(int arity, int index, bool inverted) {
  const Letter x = static_cast<Letter>(inverted ? -index : index);
  return free_reduce(arity, std::span<const Letter>(&x, 1));
}

Word free_reduce(int arity, std::span<const Letter> raw) {
  check_arity(arity);
  Word out(arity);
  out.letters_.reserve(raw.size());
  for (const Letter x : raw) {
    const int index = x < 0 ? -x : x;
    if (index == 0 || index > arity) {
      throw UsageError("letter index " + std::to_string(index) +
                       " out of range for arity " + std::to_string(arity));
    }
    if (!out.letters_.empty() && out.letters_.back() == -x) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(x);
    }
  }
  return out;
}

Word Word::inverse() const {
  Word out(arity_);
  out.letters_.resize(letters_.size());
  std::transform(letters_.rbegin(), letters_.rend(), out.letters_.begin(),
                 [](Letter x) { return static_cast<Letter>(-x); });
  return out;
}

Word Word::operator*(const Word& rhs) const {
  if (arity_ != rhs.arity_) {
    throw UsageError("cannot multiply words of arity " +
                     std::to_string(arity_) + " and " +
                     std::to_string(rhs.arity_));
  }
  // Cancel across the seam only; both factors are already reduced.
  std::size_t left = letters_.size();
  std::size_t right = 0;
  while (left > 0 && right < rhs.letters_.size() &&
         letters_[left - 1] == -rhs.letters_[right]) {
    --left;
    ++right;
  }
  Word out(arity_);
  out.letters_.reserve(left + rhs.letters_.size() - right);
  out.letters_.insert(out.letters_.end(), letters_.begin(),
                      letters_.begin() + static_cast<std::ptrdiff_t>(left));
  out.letters_.insert(out.letters_.end(),
                      rhs.letters_.begin() + static_cast<std::ptrdiff_t>(right),
                      rhs.letters_.end());
  return out;
}

Word Word::power(long exponent) const {
  Word base = exponent < 0 ? inverse() : *this;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Word acc(arity_);
  while (e > 0) {
    if (e & 1UL) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

std::string Word::text() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (const Letter x : letters_) {
    s.push_back(x > 0 ? static_cast<char>('a' + x - 1)
                      : static_cast<char>('A' - x - 1));
  }
  return s;
}

std::strong_ordering Word::operator<=>(const Word& rhs) const {
  if (auto c = arity_ <=> rhs.arity_; c != 0) return c;
  if (auto c = letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const int a = letter_rank(letters_[i]);
    const int b = letter_rank(rhs.letters_[i]);
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

Word parse_word(std::string_view text, int arity) {
  if (text == "1") return Word(arity);
  if (text.empty()) throw ParseError("empty word (spell the identity as 1)", 0);
  std::vector<Letter> raw;
  raw.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    int index = 0;
    if (c >= 'a' && c <= 'z') {
      index = c - 'a' + 1;
    } else if (c >= 'A' && c <= 'Z') {
      index = -(c - 'A' + 1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in word", i);
    }
    if (std::abs(index) > arity) {
      throw ParseError(std::string("letter '") + c + "' exceeds arity " +
                           std::to_string(arity),
                       i);
    }
    raw.push_back(static_cast<Letter>(index));
  }
  return free_reduce(arity, raw);
}

std::uint64_t count_reduced_words(int arity, int length) {
  if (length == 0) return 1;
  std::uint64_t count = 2ULL * static_cast<std::uint64_t>(arity);
  for (int i = 1; i < length; ++i) count *= 2ULL * arity - 1;
  return count;
}

std::vector<Word> enumerate_sphere(int arity, int length) {
  check_arity(arity);
  std::vector<Word> level{Word(arity)};
  for (int len = 1; len <= length; ++len) {
    std::vector<Word> next;
    next.reserve(level.size() * static_cast<std::size_t>(2 * arity));
    for (const Word& w : level) {
      for (int r = 0; r < 2 * arity; ++r) {
        const Letter x = letter_from_rank(r);
        if (!w.empty() && w.letters().back() == -x) continue;
        next.push_back(w * Word::generator(arity, std::abs(x), x < 0));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<Word> enumerate_words(int arity, int max_len) {
  check_arity(arity);
  std::vector<Word> out;
  std::vector<Word> level{Word(arity)};
  out.push_back(level.front());
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    next.reserve(level.size() * static_cast<std::size_t>(2 * arity));
    for (const Word& w : level) {
      for (int r = 0; r < 2 * arity; ++r) {
        const Letter x = letter_from_rank(r);
        if (!w.empty() && w.letters().back() == -x) continue;
        next.push_back(w * Word::generator(arity, std::abs(x), x < 0));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

Word commutator(const Word& x, const Word& y) {
  return x * y * x.inverse() * y.inverse();
}

Word simple_commutator(int arity, std::span<const int> indices) {
  if (indices.empty()) throw UsageError("simple commutator needs indices");
  Word acc = Word::generator(arity, indices.front());
  for (std::size_t i = 1; i < indices.size(); ++i) {
    acc = commutator(acc, Word::generator(arity, indices[i]));
  }
  return acc;
}

std::vector<Word> derived_witnesses(int arity, int degree, int max_len) {
  if (degree < 1) throw UsageError("derived degree must be >= 1");
  if (max_len < 0) throw UsageError("max_len must be >= 0");
  // bound[j] caps the length of stage-j words; a commutator of u, v can only
  // be short if |u| + |v| <= bound[j] / 2 (ignoring cancellation).
  std::vector<int> bound(static_cast<std::size_t>(degree) + 1);
  bound[static_cast<std::size_t>(degree)] = max_len;
  for (int j = degree; j > 0; --j) {
    bound[static_cast<std::size_t>(j - 1)] = bound[static_cast<std::size_t>(j)] / 2;
  }

  std::vector<Word> stage = enumerate_words(arity, bound[0]);
  stage.erase(stage.begin());  // drop the identity
  for (int j = 1; j <= degree; ++j) {
    const int pair_bound = bound[static_cast<std::size_t>(j - 1)];
    const int keep_bound = bound[static_cast<std::size_t>(j)];
    std::map<std::size_t, std::vector<const Word*>> by_length;
    for (const Word& w : stage) by_length[w.size()].push_back(&w);
    std::set<Word> next;
    for (const auto& [lu, us] : by_length) {
      for (const auto& [lv, vs] : by_length) {
        if (static_cast<int>(lu + lv) > pair_bound) break;
        for (const Word* u : us) {
          const Word u_inv = u->inverse();
          for (const Word* v : vs) {
            Word c = *u * *v * u_inv * v->inverse();
            if (!c.empty() && static_cast<int>(c.size()) <= keep_bound) {
              next.insert(std::move(c));
            }
          }
        }
      }
    }
    stage.assign(next.begin(), next.end());
  }
  return stage;
}

Word substitute(const Word& w, std::span<const Word> images) {
  if (static_cast<int>(images.size()) != w.arity()) {
    throw UsageError("substitution needs " + std::to_string(w.arity()) +
                     " images, got " + std::to_string(images.size()));
  }
  const int target = images.empty() ? 0 : images.front().arity();
  std::vector<Word> inverses;
  inverses.reserve(images.size());
  for (const Word& im : images) {
    if (im.arity() != target) throw UsageError("substitution images differ in arity");
    inverses.push_back(im.inverse());
  }
  Word acc(target);
  for (const Letter x : w.letters()) {
    const auto i = static_cast<std::size_t>(std::abs(x) - 1);
    acc = acc * (x > 0 ? images[i] : inverses[i]);
  }
  return acc;
}

std::vector<long> exponent_sums(const Word& w) {
  std::vector<long> sums(static_cast<std::size_t>(w.arity()), 0);
  for (const Letter x : w.letters()) {
    sums[static_cast<std::size_t>(std::abs(x) - 1)] += x > 0 ? 1 : -1;
  }
  return sums;
}

}  // namespace mgw
