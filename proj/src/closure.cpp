#include "mgw/closure.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <unordered_set>

#include "mgw/error.hpp"

namespace mgw {

namespace {

Word cyclically_reduce(const Word& w) {
  auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == -letters[hi - 1]) {
    ++lo;
    --hi;
  }
  return free_reduce(w.arity(), letters.subspan(lo, hi - lo));
}

std::vector<Word> rotations(const Word& r) {
  std::vector<Word> out;
  const auto letters = r.letters();
  std::vector<Letter> buf(letters.size());
  for (std::size_t s = 0; s < letters.size(); ++s) {
    std::rotate_copy(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(s),
                     letters.end(), buf.begin());
    out.push_back(free_reduce(r.arity(), buf));
  }
  return out;
}

}  // namespace

Verdict closure_member(std::span<const Word> relators, const Word& w,
                       std::uint64_t budget, const ClosureOptions& options) {
  if (budget == 0) throw UsageError("closure budget must be positive");
  if (w.empty()) return Verdict::trivial();

  const int arity = w.arity();
  std::set<Word> pieces;
  std::size_t longest = 0;
  for (const Word& r : relators) {
    if (r.arity() != arity) throw UsageError("relator arity differs from word arity");
    const Word c = cyclically_reduce(r);
    if (c.empty()) continue;
    for (const Word& base : {c, c.inverse()}) {
      for (const Word& rot : rotations(base)) {
        for (const Word& u : enumerate_words(arity, options.conjugator_length)) {
          const Word conj = u * rot * u.inverse();
          longest = std::max(longest, conj.size());
          pieces.insert(conj);
        }
      }
    }
  }
  const std::size_t cap = options.max_length > 0 ? options.max_length : w.size() + longest;

  std::uint64_t work = 0;
  std::size_t depth = 0;
  std::set<Word> seen{w};
  std::vector<Word> frontier{w};
  std::vector<Letter> buf;
  while (!frontier.empty()) {
    ++depth;
    std::vector<Word> next;
    for (const Word& cur : frontier) {
      const auto letters = cur.letters();
      for (std::size_t pos = 0; pos <= letters.size(); ++pos) {
        for (const Word& piece : pieces) {
          if (++work > budget) {
            return Verdict::unknown("closure search stopped after " +
                                    std::to_string(budget) + " states at " +
                                    std::to_string(depth) + " insertions");
          }
          buf.assign(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(pos));
          buf.insert(buf.end(), piece.letters().begin(), piece.letters().end());
          buf.insert(buf.end(), letters.begin() + static_cast<std::ptrdiff_t>(pos),
                     letters.end());
          Word cand = free_reduce(arity, buf);
          if (cand.empty()) return Verdict::trivial();
          if (cand.size() > cap) continue;
          if (seen.insert(cand).second) next.push_back(std::move(cand));
        }
      }
    }
    frontier = std::move(next);
  }
  return Verdict::unknown("closure search exhausted " + std::to_string(seen.size()) +
                          " words of length <= " + std::to_string(cap) +
                          " without a certificate");
}

}  // namespace mgw
