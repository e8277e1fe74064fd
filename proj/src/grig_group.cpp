#include "mgw/grig_group.hpp"

#include <string>

#include "mgw/error.hpp"

namespace mgw {

grig::GrigWord to_grig_word(const Word& w, Marking marking) {
  std::string raw;
  raw.reserve(2 * w.size());
  for (const Letter x : w.letters()) {
    if (marking == Marking::G4) {
      raw.push_back(static_cast<char>('a' + std::abs(x) - 1));
    } else if (x == 1 || x == -1) {
      raw.push_back('d');
    } else {
      raw += x > 0 ? "ab" : "ba";
    }
  }
  return grig::GrigWord::reduce(raw);
}

namespace {

class GrigOracle final : public GroupOracle {
 public:
  GrigOracle(TernarySequence alpha, Marking marking, const GrigOptions& options)
      : alpha_(std::move(alpha)),
        marking_(marking),
        reads_(options.reads),
        level_(alpha_, options.fingerprint_depth, options.reads.get()) {}

  Verdict decide(const Word& w) const override {
    return grig::is_trivial(alpha_, to_grig_word(w, marking_), grig::kDefaultBudget,
                            reads_.get());
  }
  std::optional<std::uint64_t> fingerprint(const Word& w) const override {
    return level_.fingerprint(to_grig_word(w, marking_));
  }
  OrderResult order(const Word& w, std::uint64_t budget) const override {
    return grig::order(alpha_, to_grig_word(w, marking_), budget, reads_.get());
  }

 private:
  TernarySequence alpha_;
  Marking marking_;
  std::shared_ptr<grig::ReadTracker> reads_;
  grig::LevelAction level_;
};

class LimitOracle final : public GroupOracle {
 public:
  explicit LimitOracle(LimitDescriptor d) : descriptor_(std::move(d)) {}

  Verdict decide(const Word&) const override {
    return Verdict::unknown("limit point: ball-level queries only");
  }
  bool exact() const override { return false; }
  std::optional<LimitDescriptor> limit() const override { return descriptor_; }

 private:
  LimitDescriptor descriptor_;
};

std::string grig_spec(const char* family, const TernarySequence& alpha) {
  return std::string(family) + ":" + alpha.text();
}

}  // namespace

MarkedGroup marked_G4(const TernarySequence& alpha, const GrigOptions& options) {
  return MarkedGroup(4, grig_spec("grig", alpha),
                     std::make_shared<GrigOracle>(alpha, Marking::G4, options));
}

MarkedGroup marked_L2(const TernarySequence& alpha, const GrigOptions& options) {
  return MarkedGroup(2, grig_spec("grigL", alpha),
                     std::make_shared<GrigOracle>(alpha, Marking::L2, options));
}

MarkedGroup marked_limit(const TernarySequence& alpha, Marking marking, int stability,
                         int cap) {
  if (!classify(alpha).in_E) {
    throw UsageError("limit groups need an eventually constant sequence, got " +
                     alpha.text());
  }
  if (stability < 2) throw UsageError("limit stability must be >= 2");
  if (cap < 1) throw UsageError("limit approximant cap must be positive");
  const char* family = marking == Marking::G4 ? "griglim" : "griglimL";
  return MarkedGroup(marking == Marking::G4 ? 4 : 2, grig_spec(family, alpha),
                     std::make_shared<LimitOracle>(
                         LimitDescriptor{alpha.text(), marking, stability, cap}));
}

LimitBall limit_ball(const TernarySequence& alpha, Marking marking, int radius,
                     int stability, int cap, std::size_t vertex_budget,
                     const BallOptions& options) {
  if (!classify(alpha).in_E) {
    throw UsageError("limit balls need an eventually constant sequence, got " +
                     alpha.text());
  }
  if (stability < 2) throw UsageError("limit stability must be >= 2");
  if (radius < 0) throw UsageError("radius must be >= 0");
  const std::string constant = alpha.tail();
  std::string last;
  int run = 0;
  CayleyBall stable;
  for (int m = radius + 1; m <= cap; ++m) {
    std::string prefix = alpha.prefix();
    for (int i = 0; i < m; ++i) prefix += constant;
    const TernarySequence beta(prefix, "012");
    const MarkedGroup g = marking == Marking::G4 ? marked_G4(beta) : marked_L2(beta);
    CayleyBall b = ball(g, radius, vertex_budget, options);
    std::string cert = canonical_certificate(b);
    if (run > 0 && cert == last) {
      ++run;
    } else {
      run = 1;
      last = std::move(cert);
      stable = std::move(b);
    }
    if (run >= stability) {
      return {std::move(stable), m, alpha.prefix().size() + static_cast<std::size_t>(m)};
    }
  }
  throw ComputeError("limit ball at " + alpha.text() + " radius " + std::to_string(radius) +
                     " did not stabilize within approximant cap " + std::to_string(cap));
}

}  // namespace mgw
