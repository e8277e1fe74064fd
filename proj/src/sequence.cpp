#include "mgw/sequence.hpp"

#include <algorithm>

#include "mgw/error.hpp"

namespace mgw {

namespace {

void check_symbols(const std::string& s, std::size_t offset) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '2') {
      throw ParseError(std::string("sequence symbol '") + s[i] + "' not in {0,1,2}",
                       offset + i);
    }
  }
}

std::string primitive_root(const std::string& t) {
  const std::size_t n = t.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = t[i] == t[i - d];
    if (periodic) return t.substr(0, d);
  }
  return t;
}

}  // namespace

TernarySequence::TernarySequence(std::string prefix, std::string tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (tail_.empty()) throw UsageError("sequence tail must be nonempty");
  check_symbols(prefix_, 0);
  check_symbols(tail_, prefix_.size() + 1);
  tail_ = primitive_root(tail_);
  // Absorb prefix symbols that merely continue the tail backwards.
  while (!prefix_.empty() && prefix_.back() == tail_.back()) {
    std::rotate(tail_.rbegin(), tail_.rbegin() + 1, tail_.rend());
    prefix_.pop_back();
  }
}

TernarySequence TernarySequence::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    throw ParseError("sequence needs a parenthesised tail", text.size());
  }
  if (text.empty() || text.back() != ')') {
    throw ParseError("sequence must end with ')'", text.size());
  }
  const std::string prefix(text.substr(0, open));
  const std::string tail(text.substr(open + 1, text.size() - open - 2));
  if (tail.empty()) throw ParseError("empty sequence tail", open + 1);
  if (tail.find_first_of("()") != std::string::npos) {
    throw ParseError("nested parenthesis in sequence", open + 1 + tail.find_first_of("()"));
  }
  check_symbols(prefix, 0);
  check_symbols(tail, open + 1);
  return TernarySequence(prefix, tail);
}

TernarySequence TernarySequence::shift(std::size_t count) const {
  std::string p = prefix_;
  std::string t = tail_;
  const std::size_t drop = std::min(count, p.size());
  p.erase(0, drop);
  const std::size_t rot = (count - drop) % t.size();
  std::rotate(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(rot), t.end());
  return TernarySequence(std::move(p), std::move(t));
}

std::string TernarySequence::text() const { return prefix_ + "(" + tail_ + ")"; }

SequenceClass classify(const TernarySequence& alpha) {
  SequenceClass c;
  const std::string& t = alpha.tail();
  c.in_E = t.size() == 1;
  c.in_I = t.find('0') != std::string::npos && t.find('1') != std::string::npos &&
           t.find('2') != std::string::npos;
  c.in_C = true;
  return c;
}

std::size_t common_prefix_length(const TernarySequence& a, const TernarySequence& b,
                                 std::size_t cap) {
  for (std::size_t i = 0; i < cap; ++i) {
    if (a.at(i) != b.at(i)) return i;
  }
  return cap;
}

}  // namespace mgw
