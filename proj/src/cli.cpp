#include "mgw/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "mgw/catalog.hpp"
#include "mgw/config.hpp"
#include "mgw/error.hpp"
#include "mgw/grig_group.hpp"
#include "mgw/hierarchy.hpp"
#include "mgw/probes.hpp"
#include "mgw/serialize.hpp"
#include "mgw/space.hpp"

namespace mgw {

namespace {

struct Globals {
  std::string config_file;
  std::vector<std::string> settings;
  int threads = 0;
  std::uint64_t seed = 0;
  std::string cache_dir;
  bool no_cache = false;
  bool verify_cache = false;
  std::string format = "json";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Word> parse_words(const std::string& list, int arity) {
  std::vector<Word> out;
  for (const auto& item : split(list, ',')) out.push_back(parse_word(item, arity));
  return out;
}

std::vector<Word> generators(int arity) {
  std::vector<Word> out;
  for (int i = 1; i <= arity; ++i) out.push_back(Word::generator(arity, i));
  return out;
}

Json words_json(const std::vector<Word>& words) {
  Json j = Json::array();
  for (const Word& w : words) j.push_back(w.text());
  return j;
}

Json distance_json(const DistanceValue& d) {
  Json j;
  j[d.is_exact() ? "exact_exponent" : "at_most_exponent"] = d.exponent;
  j["kind"] = d.is_exact() ? "exact" : "at_most";
  return j;
}

Json verdict_json(const ProbeVerdict& v) {
  Json j;
  j["outcome"] = to_string(v.outcome);
  j["level"] = to_string(v.level);
  j["witness"] = words_json(v.witness);
  j["scale"] = v.scale;
  return j;
}

Json order_json(const OrderResult& r) {
  Json j;
  if (r.is_finite()) {
    j["kind"] = "finite";
    j["order"] = r.order;
  } else {
    j["kind"] = "exceeds_budget";
    j["certified_infinite"] = r.certified_infinite;
  }
  return j;
}

Json growth_report_json(const GrowthReport& r) {
  Json j;
  j["a_star"] = r.a_star;
  j["slope"] = r.slope;
  j["min_tail_ratio"] = r.min_tail_ratio;
  j["exponential_consistent"] = r.exponential_consistent;
  j["polynomial_consistent"] = r.polynomial_consistent;
  j["note"] = r.note;
  return j;
}

Marking parse_marking(const std::string& text) {
  if (text == "G4") return Marking::G4;
  if (text == "L2") return Marking::L2;
  throw UsageError("marking must be G4 or L2, got " + text);
}

class Session {
 public:
  Session(const Globals& globals, std::ostream& out) : globals_(globals), out_(out) {
    if (const char* env = std::getenv("MGW_CACHE_DIR")) config_.cache_dir = env;
    if (!globals.config_file.empty()) config_.load_file(globals.config_file);
    for (const auto& kv : globals.settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got " + kv);
      config_.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!globals.cache_dir.empty()) config_.cache_dir = globals.cache_dir;
    if (globals.threads > 0) config_.threads = globals.threads;
    if (globals.seed > 0) config_.seed = globals.seed;
    if (config_.threads > 0) omp_set_num_threads(config_.threads);
  }

  const Config& config() const { return config_; }

  void require_format(std::initializer_list<const char*> allowed) const {
    for (const char* f : allowed) {
      if (globals_.format == f) return;
    }
    std::string list;
    for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
    throw UsageError("format " + globals_.format + " not supported here (use " + list + ")");
  }
  const std::string& format() const { return globals_.format; }

  MarkedGroup group(const std::string& spec) const {
    InstantiateOptions o;
    o.closure_budget = config_.closure_budget;
    o.limit_stability = config_.limit_stability;
    o.limit_cap = config_.limit_cap;
    return instantiate(spec, o);
  }

  void check_resolution(int r) const {
    if (r < 1 || r > config_.max_resolution) {
      throw UsageError("resolution must be in [1, " + std::to_string(config_.max_resolution) +
                       "]");
    }
  }

  CayleyBall cached_ball(const MarkedGroup& g, int radius) const {
    if (config_.cache_dir.empty() || globals_.no_cache) {
      return ball(g, radius, config_.vertex_budget);
    }
    const BallCache cache(config_.cache_dir);
    if (auto hit = cache.load(g.spec(), radius)) {
      if (!globals_.verify_cache) return *hit;
      CayleyBall fresh = ball(g, radius, config_.vertex_budget);
      if (canonical_certificate(fresh) == canonical_certificate(*hit)) return *hit;
      cache.store(g.spec(), radius, fresh);
      return fresh;
    }
    CayleyBall fresh = ball(g, radius, config_.vertex_budget);
    cache.store(g.spec(), radius, fresh);
    return fresh;
  }

  void emit(Json j) const {
    j["config"] = config_.echo();
    out_ << j.dump(2) << "\n";
  }
  std::ostream& out() const { return out_; }

 private:
  const Globals& globals_;
  std::ostream& out_;
  Config config_;
};

using Handler = std::function<int(const Session&)>;

void add_ball(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("ball", "Cayley ball of radius k");
  auto spec = std::make_shared<std::string>();
  auto radius = std::make_shared<int>(1);
  auto out_file = std::make_shared<std::string>();
  cmd->add_option("--group,-g", *spec, "group spec")->required();
  cmd->add_option("--radius,-r", *radius, "ball radius")->required();
  cmd->add_option("--out", *out_file, "also write the ball JSON to this file");
  handlers[cmd] = [=](const Session& s) {
    s.require_format({"json", "dot", "text"});
    if (*radius < 0) throw UsageError("radius must be >= 0");
    const MarkedGroup g = s.group(*spec);
    const CayleyBall b = s.cached_ball(g, *radius);
    if (!out_file->empty()) {
      std::ofstream f(*out_file);
      if (!f) throw UsageError("cannot write " + *out_file);
      f << ball_to_json(b).dump(2) << "\n";
    }
    if (s.format() == "dot") {
      s.out() << ball_to_dot(b);
    } else if (s.format() == "text") {
      s.out() << g.spec() << " radius " << b.radius << ": " << b.size() << " vertices, "
              << b.edge_count() << " edges\n";
    } else {
      Json j;
      j["group"] = g.spec();
      j["ball"] = ball_to_json(b);
      s.emit(std::move(j));
    }
    return 0;
  };
}

void add_dist(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("dist", "distance between two marked groups");
  auto a = std::make_shared<std::string>();
  auto b = std::make_shared<std::string>();
  auto metric = std::make_shared<std::string>("mu");
  auto resolution = std::make_shared<int>(6);
  cmd->add_option("--a", *a, "first group spec")->required();
  cmd->add_option("--b", *b, "second group spec")->required();
  cmd->add_option("--metric", *metric, "mu, nu or d")->check(CLI::IsMember({"mu", "nu", "d"}));
  cmd->add_option("--resolution", *resolution, "resolution R");
  handlers[cmd] = [=](const Session& s) {
    s.require_format({"json", "text"});
    if (*metric == "d") {
      // resolution counts enumerated words here, not word lengths
      if (*resolution < 1 || *resolution > 1'000'000) {
        throw UsageError("resolution for d must be in [1, 1000000]");
      }
    } else {
      s.check_resolution(*resolution);
    }
    const MarkedGroup ga = s.group(*a);
    const MarkedGroup gb = s.group(*b);
    DistanceValue d;
    if (*metric == "mu") {
      d = mu_distance(ga, gb, *resolution);
    } else if (*metric == "nu") {
      d = nu_distance(ga, gb, *resolution);
    } else {
      d = d_distance(ga, gb, *resolution);
    }
    if (s.format() == "text") {
      s.out() << *metric << "(" << ga.spec() << ", " << gb.spec() << ") = " << to_string(d)
              << "\n";
      return 0;
    }
    Json j;
    j["metric"] = *metric;
    j.update(distance_json(d));
    j["a"] = ga.spec();
    j["b"] = gb.spec();
    j["resolution"] = *resolution;
    s.emit(std::move(j));
    return 0;
  };
}

void add_growth(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("growth", "growth function Gamma(0..X)");
  auto spec = std::make_shared<std::string>();
  auto max = std::make_shared<int>(6);
  auto certified = std::make_shared<bool>(false);
  cmd->add_option("--group,-g", *spec, "group spec")->required();
  cmd->add_option("--max,-x", *max, "largest radius X");
  cmd->add_flag("--certified-only", *certified, "compare every candidate with the oracle");
  handlers[cmd] = [=](const Session& s) {
    s.require_format({"json", "csv", "text"});
    if (*max < 0) throw UsageError("--max must be >= 0");
    const MarkedGroup g = s.group(*spec);
    BallOptions opts;
    opts.use_fingerprints = !*certified;
    const auto table = growth(g, *max, s.config().vertex_budget, opts);
    if (s.format() == "csv") {
      s.out() << growth_to_csv(table);
      return 0;
    }
    if (s.format() == "text") {
      s.out() << g.spec() << ":";
      for (const auto v : table) s.out() << " " << v;
      s.out() << "\n";
      return 0;
    }
    Json j;
    j["group"] = g.spec();
    j["gamma"] = table;
    if (table.size() >= 4) j["classification"] = growth_report_json(growth_classify(table));
    s.emit(std::move(j));
    return 0;
  };
}

void add_probe(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("probe", "group-property probe");
  struct Args {
    std::string spec, property, images, subgroup, strategy = "balls";
    int max_len = -1, scale = 3, preimage_len = 0, j = 2, witness_len = -1, m = 2,
        max_radius = -1;
    std::uint64_t order_budget = 0;
    std::size_t max_elements = 0;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("spec", a->spec, "group spec")->required();
  cmd->add_option("--property,-p", a->property,
                  "abelian|nilpotent:k|solvable:k|torsion|folner|endo|index")
      ->required();
  cmd->add_option("--max-len", a->max_len, "word length scale (solvable, torsion)");
  cmd->add_option("--order-budget", a->order_budget, "order budget (torsion)");
  cmd->add_option("--images", a->images, "comma-separated generator images (endo)");
  cmd->add_option("--scale", a->scale, "word length scale L (endo)");
  cmd->add_option("--preimage-len", a->preimage_len, "preimage length L' (endo)");
  cmd->add_option("--subgroup", a->subgroup, "comma-separated subgroup generators (index)");
  cmd->add_option("--j", a->j, "index bound j (index)");
  cmd->add_option("--witness-len", a->witness_len, "witness length B (index)");
  cmd->add_option("--m", a->m, "Folner parameter m (folner)");
  cmd->add_option("--strategy", a->strategy, "balls or boxes (folner)")
      ->check(CLI::IsMember({"balls", "boxes"}));
  cmd->add_option("--max-radius", a->max_radius, "largest ball radius (folner)");
  cmd->add_option("--max-elements", a->max_elements, "largest candidate set (folner)");
  handlers[cmd] = [=](const Session& s) {
    s.require_format({"json"});
    const MarkedGroup g = s.group(a->spec);
    Json j;
    j["group"] = g.spec();
    j["property"] = a->property;
    const auto colon = a->property.find(':');
    const std::string name = a->property.substr(0, colon);
    int k = 0;
    if (name == "nilpotent" || name == "solvable") {
      if (colon == std::string::npos) throw UsageError(name + " needs a degree, e.g. " + name + ":2");
      try {
        k = std::stoi(a->property.substr(colon + 1));
      } catch (const std::exception&) {
        throw UsageError("bad degree in " + a->property);
      }
    } else if (colon != std::string::npos) {
      throw UsageError("property " + name + " takes no parameter");
    }
    if (name == "abelian") {
      j["verdict"] = verdict_json(abelian_check(g));
    } else if (name == "nilpotent") {
      j["verdict"] = verdict_json(nilpotency_class_probe(g, k));
    } else if (name == "solvable") {
      const int len = a->max_len >= 0 ? a->max_len : 10;
      j["max_len"] = len;
      j["verdict"] = verdict_json(solvable_degree_probe(g, k, len));
    } else if (name == "torsion") {
      const int len = a->max_len >= 0 ? a->max_len : 4;
      const std::uint64_t budget = a->order_budget > 0 ? a->order_budget : s.config().order_budget;
      const TorsionReport r = torsion_probe(g, len, budget);
      j["max_len"] = len;
      j["order_budget"] = budget;
      j["summary"] = to_string(r.summary);
      Json entries = Json::array();
      for (const auto& e : r.entries) {
        Json row = order_json(e.order);
        row["element"] = e.element.text();
        entries.push_back(std::move(row));
      }
      j["elements"] = std::move(entries);
    } else if (name == "folner") {
      FolnerOptions o;
      o.strategy = a->strategy == "boxes" ? FolnerStrategy::LamplighterBoxes : FolnerStrategy::Balls;
      o.max_radius = a->max_radius;
      if (a->max_elements > 0) o.max_elements = a->max_elements;
      const auto K = generators(g.arity());
      const FolnerResult r = folner_search(g, K, a->m, o);
      j["m"] = a->m;
      j["found"] = r.found;
      j["family"] = r.family;
      j["set_size"] = r.set.size();
      Json ratios = Json::array();
      for (std::size_t i = 0; i < K.size(); ++i) {
        ratios.push_back({{"generator", K[i].text()}, {"ratio", r.ratios[i].text()}});
      }
      j["ratios"] = std::move(ratios);
      j["best"] = r.best.text();
    } else if (name == "endo") {
      if (a->images.empty()) throw UsageError("endo needs --images");
      const EndoReport r =
          endo_probe(g, parse_words(a->images, g.arity()), a->scale, a->preimage_len);
      j["welldefined"] = verdict_json(r.welldefined);
      j["injective"] = verdict_json(r.injective);
      j["surjective"] = verdict_json(r.surjective);
    } else if (name == "index") {
      if (a->subgroup.empty()) throw UsageError("index needs --subgroup");
      const int B = a->witness_len >= 0 ? a->witness_len : s.config().index_witness_len;
      const IndexResult r = index_probe(g, parse_words(a->subgroup, g.arity()), a->j, B);
      j["j"] = a->j;
      j["cosets"] = r.cosets;
      j["verdict"] = verdict_json(r.verdict);
    } else {
      throw UsageError("unknown property " + a->property);
    }
    s.emit(std::move(j));
    return 0;
  };
}

void add_folner(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("folner", "Folner ratios of a given set or a search");
  auto spec = std::make_shared<std::string>();
  auto set = std::make_shared<std::string>();
  auto gens = std::make_shared<std::string>();
  auto m = std::make_shared<int>(2);
  auto strategy = std::make_shared<std::string>("balls");
  auto max_radius = std::make_shared<int>(-1);
  cmd->add_option("--group,-g", *spec, "group spec")->required();
  cmd->add_option("--set", *set, "comma-separated finite set F; omit to search");
  cmd->add_option("--generators", *gens, "comma-separated elements K (default: generators)");
  cmd->add_option("--m", *m, "target ratio 1/m (search)");
  cmd->add_option("--strategy", *strategy, "balls or boxes")
      ->check(CLI::IsMember({"balls", "boxes"}));
  cmd->add_option("--max-radius", *max_radius, "largest ball radius");
  handlers[cmd] = [=](const Session& s) {
    s.require_format({"json"});
    const MarkedGroup g = s.group(*spec);
    const auto K = gens->empty() ? generators(g.arity()) : parse_words(*gens, g.arity());
    Json j;
    j["group"] = g.spec();
    Json ratios = Json::array();
    if (!set->empty()) {
      const auto F = parse_words(*set, g.arity());
      for (const Word& k : K) {
        ratios.push_back({{"generator", k.text()}, {"ratio", folner_ratio(g, F, k).text()}});
      }
      j["ratios"] = std::move(ratios);
    } else {
      FolnerOptions o;
      o.strategy = *strategy == "boxes" ? FolnerStrategy::LamplighterBoxes : FolnerStrategy::Balls;
      o.max_radius = *max_radius;
      o.max_elements = s.config().vertex_budget;
      const FolnerResult r = folner_search(g, K, *m, o);
      j["m"] = *m;
      j["found"] = r.found;
      j["family"] = r.family;
      j["set_size"] = r.set.size();
      for (std::size_t i = 0; i < K.size(); ++i) {
        ratios.push_back({{"generator", K[i].text()}, {"ratio", r.ratios[i].text()}});
      }
      j["ratios"] = std::move(ratios);
      j["best"] = r.best.text();
    }
    s.emit(std::move(j));
    return 0;
  };
}

void add_converge(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("converge", "mu-distances of a sequence to a limit");
  auto terms = std::make_shared<std::vector<std::string>>();
  auto limit = std::make_shared<std::string>();
  auto resolution = std::make_shared<int>(8);
  cmd->add_option("--term", *terms, "term spec (repeat in order)")->required();
  cmd->add_option("--limit", *limit, "limit spec")->required();
  cmd->add_option("--resolution", *resolution, "resolution R");
  handlers[cmd] = [=](const Session& s) {
    s.require_format({"json", "text"});
    s.check_resolution(*resolution);
    std::vector<MarkedGroup> groups;
    for (const auto& t : *terms) groups.push_back(s.group(t));
    const MarkedGroup lim = s.group(*limit);
    const ConvergeTable t = converge_table(groups, lim, *resolution);
    if (s.format() == "text") {
      for (std::size_t i = 0; i < groups.size(); ++i) {
        s.out() << groups[i].spec() << " " << to_string(t.distances[i]) << "\n";
      }
      return 0;
    }
    Json j;
    j["limit"] = lim.spec();
    j["metric"] = "mu";
    j["resolution"] = *resolution;
    Json rows = Json::array();
    for (std::size_t i = 0; i < groups.size(); ++i) {
      Json row;
      row["term"] = groups[i].spec();
      row.update(distance_json(t.distances[i]));
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["nonincreasing"] = t.nonincreasing;
    j["strictly_decreasing"] = t.strictly_decreasing;
    s.emit(std::move(j));
    return 0;
  };
}

void add_grig(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* grig_cmd = app.add_subcommand("grig", "Grigorchuk-family engine");
  grig_cmd->require_subcommand(1);
  struct Args {
    std::string seq, word, vertex;
    std::uint64_t budget = 0;
  };
  const auto make = [&](const char* name, const char* help, bool needs_seq) {
    auto* cmd = grig_cmd->add_subcommand(name, help);
    auto a = std::make_shared<Args>();
    if (needs_seq) cmd->add_option("--seq", a->seq, "ternary sequence PREFIX(TAIL)")->required();
    cmd->add_option("--word,-w", a->word, "word over a, b, c, d")->required();
    return std::make_pair(cmd, a);
  };

  {
    auto [cmd, a] = make("act", "image of a tree vertex", true);
    cmd->add_option("--vertex", a->vertex, "binary string")->required();
    handlers[cmd] = [a](const Session& s) {
      s.require_format({"json"});
      const auto alpha = TernarySequence::parse(a->seq);
      const auto w = grig::GrigWord::reduce(a->word);
      Json j;
      j["seq"] = alpha.text();
      j["word"] = w.text();
      j["vertex"] = a->vertex;
      j["image"] = grig::act(alpha, w, a->vertex);
      s.emit(std::move(j));
      return 0;
    };
  }
  {
    auto [cmd, a] = make("order", "order of an element", true);
    cmd->add_option("--budget", a->budget, "node and order budget");
    handlers[cmd] = [a](const Session& s) {
      s.require_format({"json"});
      const auto alpha = TernarySequence::parse(a->seq);
      const auto w = grig::GrigWord::reduce(a->word);
      const std::uint64_t budget = a->budget > 0 ? a->budget : s.config().order_budget;
      const OrderResult r = grig::order(alpha, w, budget);
      Json j;
      j["seq"] = alpha.text();
      j["word"] = w.text();
      j["budget"] = budget;
      j.update(order_json(r));
      s.emit(std::move(j));
      return r.is_finite() || r.certified_infinite ? 0 : 1;
    };
  }
  {
    auto [cmd, a] = make("reduce", "canonical alternating form", false);
    handlers[cmd] = [a](const Session& s) {
      s.require_format({"json", "text"});
      const auto w = grig::GrigWord::reduce(a->word);
      if (s.format() == "text") {
        s.out() << w.text() << "\n";
        return 0;
      }
      Json j;
      j["word"] = a->word;
      j["reduced"] = w.text();
      s.emit(std::move(j));
      return 0;
    };
  }
  {
    auto [cmd, a] = make("trivial", "decide w = e in G_alpha", true);
    handlers[cmd] = [a](const Session& s) {
      s.require_format({"json"});
      const auto alpha = TernarySequence::parse(a->seq);
      const auto w = grig::GrigWord::reduce(a->word);
      const Verdict v = grig::is_trivial(alpha, w);
      Json j;
      j["seq"] = alpha.text();
      j["word"] = w.text();
      j["verdict"] = to_string(v.kind);
      s.emit(std::move(j));
      return v.is_unknown() ? 1 : 0;
    };
  }
  {
    auto [cmd, a] = make("decompose", "sections below the root", true);
    handlers[cmd] = [a](const Session& s) {
      s.require_format({"json"});
      const auto alpha = TernarySequence::parse(a->seq);
      const auto w = grig::GrigWord::reduce(a->word);
      const grig::Decomposition d = grig::wreath_decompose(w, alpha);
      Json j;
      j["seq"] = alpha.text();
      j["word"] = w.text();
      j["first"] = d.first.text();
      j["second"] = d.second.text();
      j["swap"] = d.swap;
      s.emit(std::move(j));
      return 0;
    };
  }
}

void add_reduce(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("reduce", "ball of the marked group attached to a sequence");
  auto seq = std::make_shared<std::string>();
  auto marking = std::make_shared<std::string>("G4");
  auto radius = std::make_shared<int>(1);
  auto mode = std::make_shared<std::string>();
  auto out_file = std::make_shared<std::string>();
  cmd->add_option("--seq", *seq, "ternary sequence PREFIX(TAIL)")->required();
  cmd->add_option("--marking", *marking, "G4 or L2")->check(CLI::IsMember({"G4", "L2"}));
  cmd->add_option("--radius,-r", *radius, "ball radius");
  cmd->add_option("--mode", *mode, "limit or direct (default: limit iff eventually constant)")
      ->check(CLI::IsMember({"limit", "direct"}));
  cmd->add_option("--out", *out_file, "write the ball JSON to this file");
  handlers[cmd] = [=](const Session& s) {
    s.require_format({"json", "dot"});
    const auto alpha = TernarySequence::parse(*seq);
    const ReductionMode m = mode->empty() ? default_mode(alpha) : parse_mode(*mode);
    if (m == ReductionMode::Limit && !classify(alpha).in_E) {
      throw UsageError("limit mode needs an eventually constant sequence");
    }
    const Reduction r = reduce({alpha, parse_marking(*marking), m}, *radius,
                               s.config().vertex_budget);
    const Json ball_json = ball_to_json(r.ball);
    if (!out_file->empty()) {
      std::ofstream f(*out_file);
      if (!f) throw UsageError("cannot write " + *out_file);
      f << ball_json.dump(2) << "\n";
    }
    if (s.format() == "dot") {
      s.out() << ball_to_dot(r.ball);
      return 0;
    }
    Json j;
    j["seq"] = alpha.text();
    j["marking"] = *marking;
    j["mode"] = to_string(m);
    j["radius"] = *radius;
    j["vertices"] = r.ball.size();
    j["reads"] = r.reads;
    if (m == ReductionMode::Limit) j["approximant"] = r.approximant;
    j["certificate_hex"] = ball_json["certificate_hex"];
    if (out_file->empty()) j["ball"] = ball_json;
    s.emit(std::move(j));
    return 0;
  };
}

void add_expect(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("expect", "predicted versus observed properties of G_alpha");
  auto seq = std::make_shared<std::string>();
  auto marking = std::make_shared<std::string>("G4");
  auto sc = std::make_shared<ExpectationScales>();
  cmd->add_option("--seq", *seq, "ternary sequence PREFIX(TAIL)")->required();
  cmd->add_option("--marking", *marking, "G4 or L2")->check(CLI::IsMember({"G4", "L2"}));
  cmd->add_option("--torsion-len", sc->torsion_len, "torsion scale L");
  cmd->add_option("--order-budget", sc->order_budget, "order budget");
  cmd->add_option("--solvable-k", sc->solvable_k, "derived degree k");
  cmd->add_option("--solvable-len", sc->solvable_len, "derived witness length L");
  cmd->add_option("--growth-x", sc->growth_x, "growth radius X");
  handlers[cmd] = [=](const Session& s) {
    s.require_format({"json"});
    const auto alpha = TernarySequence::parse(*seq);
    const ExpectationReport r = expectation_report(alpha, parse_marking(*marking), *sc);
    Json j;
    j["seq"] = alpha.text();
    j["marking"] = *marking;
    j["class"] = {{"E", r.cls.in_E}, {"I", r.cls.in_I}, {"C", r.cls.in_C}};
    j["predicted"] = {{"periodic", r.predicted.periodic},
                      {"growth", r.predicted.growth},
                      {"solvable", r.predicted.solvable},
                      {"decidable", r.predicted.decidable}};
    Json observed;
    observed["torsion"] = to_string(r.torsion.summary);
    Json infinite = Json::array();
    std::uint64_t max_order = 0;
    for (const auto& e : r.torsion.entries) {
      if (e.order.is_finite()) max_order = std::max(max_order, e.order.order);
      if (e.order.certified_infinite) infinite.push_back(e.element.text());
    }
    observed["max_finite_order"] = max_order;
    observed["certified_infinite"] = std::move(infinite);
    observed["solvable"] = verdict_json(r.solvable);
    observed["gamma"] = r.growth;
    if (!r.growth.empty()) observed["growth"] = growth_report_json(r.growth_report);
    j["observed"] = std::move(observed);
    j["contradictions"] = r.contradictions;
    j["agreement"] = r.agreement();
    s.emit(std::move(j));
    return 0;
  };
}

void add_catalog(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* cmd = app.add_subcommand("catalog", "list the group families");
  handlers[cmd] = [](const Session& s) {
    s.require_format({"json", "text"});
    if (s.format() == "text") {
      for (const auto& e : catalog()) {
        s.out() << e.form << " (arity " << e.arity << "): " << e.description << "\n";
      }
      return 0;
    }
    Json list = Json::array();
    for (const auto& e : catalog()) {
      list.push_back({{"form", e.form}, {"arity", e.arity}, {"description", e.description}});
    }
    Json j;
    j["families"] = std::move(list);
    s.emit(std::move(j));
    return 0;
  };
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mgw: computations in the space of marked groups"};
  app.name("mgw");
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--config", globals.config_file, "key = value config file");
  app.add_option("--set", globals.settings, "override a config key (key=value)");
  app.add_option("--threads", globals.threads, "OpenMP threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", globals.seed, "seed recorded in the config echo");
  app.add_option("--cache-dir", globals.cache_dir, "ball cache directory");
  app.add_flag("--no-cache", globals.no_cache, "ignore the ball cache");
  app.add_flag("--verify-cache", globals.verify_cache, "recompute cached balls and compare");
  app.add_option("--format", globals.format, "json, dot, csv or text")
      ->check(CLI::IsMember({"json", "dot", "csv", "text"}));

  std::map<CLI::App*, Handler> handlers;
  add_ball(app, handlers);
  add_dist(app, handlers);
  add_growth(app, handlers);
  add_probe(app, handlers);
  add_folner(app, handlers);
  add_converge(app, handlers);
  add_grig(app, handlers);
  add_reduce(app, handlers);
  add_expect(app, handlers);
  add_catalog(app, handlers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e_out;
    const int code = app.exit(e, o, e_out);
    out << o.str();
    err << e_out.str();
    return code == 0 ? 0 : 2;
  }

  try {
    const Session session(globals, out);
    for (auto& [cmd, handler] : handlers) {
      if (cmd->parsed()) return handler(session);
    }
    err << "mgw: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    err << "mgw: " << e.what() << "\n";
    return 2;
  } catch (const ComputeError& e) {
    err << "mgw: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "mgw: internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mgw
