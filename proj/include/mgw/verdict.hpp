#pragma once

#include <cstdint>
#include <string>

namespace mgw {

// Answer of a word-problem oracle. Trivial and Nontrivial are certified;
// Unknown only comes from budgeted semi-oracles and names the spent effort.
struct Verdict {
  enum class Kind { Trivial, Nontrivial, Unknown };

  Kind kind = Kind::Unknown;
  std::string effort;

  static Verdict trivial() { return {Kind::Trivial, {}}; }
  static Verdict nontrivial() { return {Kind::Nontrivial, {}}; }
  static Verdict unknown(std::string effort) { return {Kind::Unknown, std::move(effort)}; }

  bool is_trivial() const noexcept { return kind == Kind::Trivial; }
  bool is_nontrivial() const noexcept { return kind == Kind::Nontrivial; }
  bool is_unknown() const noexcept { return kind == Kind::Unknown; }

  bool operator==(const Verdict&) const = default;
};

std::string to_string(Verdict::Kind kind);

// Order of an element. ExceedsBudget covers both "gave up" and "infinite";
// certified_infinite is set only when infinitude was proven.
struct OrderResult {
  enum class Kind { Finite, ExceedsBudget };

  Kind kind = Kind::ExceedsBudget;
  std::uint64_t order = 0;
  bool certified_infinite = false;

  static OrderResult finite(std::uint64_t m) { return {Kind::Finite, m, false}; }
  static OrderResult exceeds(bool infinite = false) {
    return {Kind::ExceedsBudget, 0, infinite};
  }

  bool is_finite() const noexcept { return kind == Kind::Finite; }
  bool operator==(const OrderResult&) const = default;
};

}  // namespace mgw
