#include "mgw/verdict.hpp"

namespace mgw {

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Trivial:
      return "trivial";
    case Verdict::Kind::Nontrivial:
      return "nontrivial";
    case Verdict::Kind::Unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace mgw
