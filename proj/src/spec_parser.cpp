#include "mgw/catalog.hpp"

#include <cctype>

#include "mgw/error.hpp"
#include "mgw/families.hpp"
#include "mgw/grig_group.hpp"

namespace mgw {

namespace {

using Family = GroupSpec::Family;

struct Keyword {
  std::string_view name;
  Family family;
};

// Longest names first so that prefixes do not shadow them.
constexpr Keyword kKeywords[] = {
    {"symshift_fin:", Family::SymShiftFin}, {"lamplighter", Family::Lamplighter},
    {"heisenberg", Family::Heisenberg},     {"symshift", Family::SymShift},
    {"abelian:", Family::Abelian},          {"griglim:", Family::GrigLimit},
    {"cyclic:", Family::Cyclic},            {"remark(", Family::Remark},
    {"grigL:", Family::GrigL},              {"free:", Family::Free},
    {"grig:", Family::Grig},                {"bs:", Family::BaumslagSolitar},
    {"fp:", Family::FinitelyPresented},
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GroupSpec parse_all() {
    GroupSpec spec = parse();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  long integer() {
    const std::size_t start = pos_;
    long value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (value > 1'000'000'000L) fail("integer too large");
      value = value * 10 + (peek() - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected an integer");
    return value;
  }

  void positive(long value, std::size_t at, const char* what) const {
    if (value < 1) throw ParseError(std::string(what) + " must be positive", at);
  }

  TernarySequence sequence() {
    const std::size_t start = pos_;
    while (!at_end() && peek() != ')') ++pos_;
    if (at_end()) fail("unterminated sequence tail");
    ++pos_;
    try {
      return TernarySequence::parse(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad sequence (") + e.what() + ")", start + e.position());
    }
  }

  Word word(int arity) {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '1')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a word");
    try {
      return parse_word(text_.substr(start, pos_ - start), arity);
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad word (") + e.what() + ")", start + e.position());
    }
  }

  std::vector<Word> word_list(int arity) {
    std::vector<Word> out{word(arity)};
    while (peek() == ',') {
      ++pos_;
      out.push_back(word(arity));
    }
    return out;
  }

  GroupSpec parse() {
    const std::string_view rest = text_.substr(pos_);
    for (const auto& kw : kKeywords) {
      if (rest.substr(0, kw.name.size()) != kw.name) continue;
      pos_ += kw.name.size();
      GroupSpec spec;
      spec.family = kw.family;
      body(spec);
      return spec;
    }
    fail("unknown group family");
  }

  void body(GroupSpec& spec) {
    const std::size_t at = pos_;
    switch (spec.family) {
      case Family::Free:
      case Family::Abelian: {
        const long n = integer();
        positive(n, at, "generator count");
        if (n > kMaxArity) throw ParseError("generator count exceeds 26", at);
        spec.params = {n};
        break;
      }
      case Family::Cyclic: {
        const long k = integer();
        positive(k, at, "cyclic order");
        spec.params = {k};
        break;
      }
      case Family::SymShiftFin: {
        const long k = integer();
        if (k < 2 || k > 4096) throw ParseError("symshift_fin:k needs k in [2, 4096]", at);
        spec.params = {k};
        break;
      }
      case Family::BaumslagSolitar: {
        const long m = integer();
        positive(m, at, "bs exponent m");
        expect(',');
        const std::size_t at_n = pos_;
        const long n = integer();
        positive(n, at_n, "bs exponent n");
        spec.params = {m, n};
        break;
      }
      case Family::Heisenberg:
      case Family::Lamplighter:
      case Family::SymShift:
        break;
      case Family::Grig:
      case Family::GrigL:
        spec.sequence = sequence();
        break;
      case Family::GrigLimit:
        spec.sequence = sequence();
        if (!classify(*spec.sequence).in_E) {
          throw ParseError("griglim needs an eventually constant sequence", at);
        }
        break;
      case Family::FinitelyPresented: {
        const long n = integer();
        positive(n, at, "generator count");
        if (n > kMaxArity) throw ParseError("generator count exceeds 26", at);
        spec.params = {n};
        expect(':');
        spec.words = word_list(static_cast<int>(n));
        break;
      }
      case Family::Remark: {
        auto inner = std::make_shared<GroupSpec>(parse());
        expect(';');
        const std::size_t at_marks = pos_;
        spec.words = word_list(inner->arity());
        if (spec.words.size() < 2) throw ParseError("remark needs at least 2 marks", at_marks);
        if (spec.words.size() > static_cast<std::size_t>(kMaxArity)) {
          throw ParseError("remark takes at most 26 marks", at_marks);
        }
        expect(')');
        spec.inner = std::move(inner);
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<Word>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i > 0 ? "," : "") + words[i].text();
  return out;
}

}  // namespace

int GroupSpec::arity() const {
  switch (family) {
    case Family::Free:
    case Family::Abelian:
    case Family::FinitelyPresented:
      return static_cast<int>(params.at(0));
    case Family::Grig:
    case Family::GrigLimit:
      return 4;
    case Family::Remark:
      return static_cast<int>(words.size());
    default:
      return 2;
  }
}

std::string GroupSpec::text() const {
  switch (family) {
    case Family::Free: return "free:" + std::to_string(params.at(0));
    case Family::Abelian: return "abelian:" + std::to_string(params.at(0));
    case Family::Cyclic: return "cyclic:" + std::to_string(params.at(0));
    case Family::Heisenberg: return "heisenberg";
    case Family::BaumslagSolitar:
      return "bs:" + std::to_string(params.at(0)) + "," + std::to_string(params.at(1));
    case Family::Lamplighter: return "lamplighter";
    case Family::SymShift: return "symshift";
    case Family::SymShiftFin: return "symshift_fin:" + std::to_string(params.at(0));
    case Family::Grig: return "grig:" + sequence->text();
    case Family::GrigL: return "grigL:" + sequence->text();
    case Family::GrigLimit: return "griglim:" + sequence->text();
    case Family::FinitelyPresented:
      return "fp:" + std::to_string(params.at(0)) + ":" + join(words);
    case Family::Remark: return "remark(" + inner->text() + ";" + join(words) + ")";
  }
  return {};
}

GroupSpec parse_spec(std::string_view text) { return Parser(text).parse_all(); }

MarkedGroup instantiate(const GroupSpec& spec, const InstantiateOptions& options) {
  GrigOptions grig;
  grig.fingerprint_depth = options.grig_fingerprint_depth;
  switch (spec.family) {
    case Family::Free: return free_group(static_cast<int>(spec.params.at(0)));
    case Family::Abelian: return abelian_group(static_cast<int>(spec.params.at(0)));
    case Family::Cyclic: return cyclic_group(spec.params.at(0));
    case Family::Heisenberg: return heisenberg_group();
    case Family::BaumslagSolitar: return baumslag_solitar(spec.params.at(0), spec.params.at(1));
    case Family::Lamplighter: return lamplighter_group();
    case Family::SymShift: return symshift_group();
    case Family::SymShiftFin: return symshift_fin_group(spec.params.at(0));
    case Family::Grig: return marked_G4(*spec.sequence, grig);
    case Family::GrigL: return marked_L2(*spec.sequence, grig);
    case Family::GrigLimit:
      return marked_limit(*spec.sequence, Marking::G4, options.limit_stability,
                          options.limit_cap);
    case Family::FinitelyPresented:
      return fp_group(static_cast<int>(spec.params.at(0)), spec.words, options.closure_budget);
    case Family::Remark: return remark(instantiate(*spec.inner, options), spec.words);
  }
  throw UsageError("unsupported spec " + spec.text());
}

MarkedGroup instantiate(std::string_view text, const InstantiateOptions& options) {
  return instantiate(parse_spec(text), options);
}

std::vector<CatalogEntry> catalog() {
  return {
      {"free:N", "N", "free group F_N"},
      {"abelian:N", "N", "free abelian group Z^N"},
      {"cyclic:K", "2", "Z/K marked by (1, 0)"},
      {"heisenberg", "2", "integer Heisenberg group marked by (x, y)"},
      {"bs:M,N", "2", "Baumslag-Solitar group B(M,N) marked by (a, t)"},
      {"lamplighter", "2", "Z/2 wr Z marked by (lamp, shift)"},
      {"symshift", "2", "finitary permutations of Z extended by the shift"},
      {"symshift_fin:K", "2", "S_K x| Z_K marked by ((0 1), shift)"},
      {"grig:SEQ", "4", "Grigorchuk group G_alpha marked by (a, b, c, d)"},
      {"grigL:SEQ", "2", "subgroup L_alpha marked by (d, ab)"},
      {"griglim:SEQ", "4", "limit point at an eventually constant SEQ (balls only)"},
      {"fp:N:W1,W2,...", "N", "finitely presented group, semi-decided by closure search"},
      {"remark(SPEC;W1,...,Wm)", "m", "subgroup of SPEC marked by the words W1..Wm"},
  };
}

}  // namespace mgw
