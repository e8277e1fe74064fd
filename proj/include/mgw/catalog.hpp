#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgw/oracles.hpp"
#include "mgw/sequence.hpp"

namespace mgw {

// Parsed group-spec text. Words are stored as text in canonical (reduced)
// form so that text() round-trips.
struct GroupSpec {
  enum class Family {
    Free,
    Abelian,
    Cyclic,
    Heisenberg,
    BaumslagSolitar,
    Lamplighter,
    SymShift,
    SymShiftFin,
    Grig,
    GrigL,
    GrigLimit,
    FinitelyPresented,
    Remark,
  };

  Family family = Family::Free;
  std::vector<long> params;
  std::optional<TernarySequence> sequence;
  std::vector<Word> words;  // fp relators or remark marks
  std::shared_ptr<const GroupSpec> inner;

  int arity() const;
  std::string text() const;
};

GroupSpec parse_spec(std::string_view text);

struct InstantiateOptions {
  std::uint64_t closure_budget = 200'000;
  int grig_fingerprint_depth = 8;
  int limit_stability = 3;
  int limit_cap = 12;
};

MarkedGroup instantiate(const GroupSpec& spec, const InstantiateOptions& options = {});
MarkedGroup instantiate(std::string_view text, const InstantiateOptions& options = {});

struct CatalogEntry {
  std::string form;
  std::string arity;
  std::string description;
};

std::vector<CatalogEntry> catalog();

}  // namespace mgw
