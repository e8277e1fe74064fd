#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgw/cli.hpp"
#include "mgw/serialize.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  mgw::Json json() const { return mgw::Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "mgw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = mgw::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("mgw_cli_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("dist reports the exact exponent first") {
  const auto r = run({"dist", "--a", "free:2", "--b", "abelian:2", "--metric", "mu",
                      "--resolution", "6"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("{\n  \"metric\": \"mu\",\n  \"exact_exponent\": 1,", 0) == 0);
  const auto j = r.json();
  CHECK(j["kind"] == "exact");
  CHECK(j["config"]["vertex_budget"] == 2000000);
  const auto nu = run({"dist", "--a", "free:2", "--b", "abelian:2", "--metric", "nu"}).json();
  CHECK(nu["exact_exponent"] == 3);
  const auto same = run({"dist", "--a", "free:2", "--b", "free:2", "--resolution", "3"}).json();
  CHECK(same["at_most_exponent"] == 3);
  CHECK(run({"dist", "--a", "free:2", "--b", "free:2", "--metric", "d", "--resolution", "5000"})
            .code == 0);
}

TEST_CASE("ball output formats") {
  const auto dot = run({"ball", "--group", "grig:(012)", "--radius", "1", "--format", "dot"});
  REQUIRE(dot.code == 0);
  std::size_t nodes = 0;
  std::istringstream lines(dot.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("[label=") != std::string::npos && line.find("->") == std::string::npos) ++nodes;
  }
  CHECK(nodes == 5);
  const auto j = run({"ball", "-g", "free:2", "-r", "2"}).json();
  CHECK(j["ball"]["vertices"].size() == 17);
  CHECK(j["ball"]["radius"] == 2);
  const auto text = run({"ball", "-g", "free:2", "-r", "1", "--format", "text"});
  CHECK(text.out == "free:2 radius 1: 5 vertices, 4 edges\n");
  CHECK(run({"ball", "-g", "free:2", "-r", "1", "--format", "csv"}).code == 2);
}

TEST_CASE("catalog") {
  const auto j = run({"catalog"}).json();
  CHECK(j["families"].size() >= 13);
  for (const auto& e : j["families"]) {
    CHECK(e.contains("form"));
    CHECK(e.contains("arity"));
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"ball", "-g", "cyclic:0", "-r", "1"}).code == 2);
  CHECK(run({"ball", "-g", "free:2"}).code == 2);
  CHECK(run({"dist", "--a", "free:2", "--b", "free:3"}).code == 2);
  CHECK(run({"dist", "--a", "free:2", "--b", "free:2", "--resolution", "99"}).code == 2);
  const auto budget = run({"--set", "vertex_budget=10", "ball", "-g", "free:2", "-r", "4"});
  CHECK(budget.code == 1);
  CHECK(!budget.err.empty());
  CHECK(run({"ball", "-g", "fp:2:abAB", "-r", "2"}).code == 1);
  CHECK(run({"grig", "order", "--seq", "(0)", "-w", "ab", "--budget", "64"}).code == 0);
  CHECK(run({"reduce", "--seq", "(012)", "--mode", "limit"}).code == 2);
  CHECK(run({"--set", "vertex_budget=0", "catalog"}).code == 2);
  CHECK(run({"--set", "colour=blue", "catalog"}).code == 2);
}

TEST_CASE("grig subcommands") {
  CHECK(run({"grig", "act", "--seq", "(012)", "-w", "b", "--vertex", "00"}).json()["image"] == "01");
  CHECK(run({"grig", "reduce", "-w", "bc", "--format", "text"}).out == "d\n");
  CHECK(run({"grig", "trivial", "--seq", "(0)", "-w", "d"}).json()["verdict"] == "trivial");
  const auto o = run({"grig", "order", "--seq", "(012)", "-w", "ab"}).json();
  CHECK(o["kind"] == "finite");
  CHECK(o["order"] == 16);
  const auto inf = run({"grig", "order", "--seq", "(0)", "-w", "ab"}).json();
  CHECK(inf["certified_infinite"] == true);
  const auto d = run({"grig", "decompose", "--seq", "(012)", "-w", "b"}).json();
  CHECK(d["first"] == "a");
  CHECK(d["second"] == "b");
  CHECK(d["swap"] == false);
  CHECK(run({"grig", "act", "--seq", "(012)", "-w", "e", "--vertex", "0"}).code == 2);
}

TEST_CASE("growth, probe, folner, converge, reduce and expect") {
  CHECK(run({"growth", "-g", "free:2", "-x", "2", "--format", "csv"}).out ==
        "x,gamma\n0,1\n1,5\n2,17\n");
  const auto g = run({"growth", "-g", "free:2", "-x", "6"}).json();
  CHECK(g["classification"]["exponential_consistent"] == true);
  const auto certified = run({"growth", "-g", "grig:(012)", "-x", "5", "--certified-only"}).json();
  CHECK(certified["gamma"] == run({"growth", "-g", "grig:(012)", "-x", "5"}).json()["gamma"]);

  CHECK(run({"probe", "heisenberg", "--property", "nilpotent:2"}).json()["verdict"]["outcome"] ==
        "holds");
  const auto ab = run({"probe", "free:2", "-p", "abelian"}).json();
  CHECK(ab["verdict"]["witness"][0] == "abAB");
  CHECK(run({"probe", "free:2", "-p", "nilpotent"}).code == 2);
  CHECK(run({"probe", "free:2", "-p", "sparkly"}).code == 2);
  CHECK(run({"probe", "cyclic:6", "-p", "torsion", "--max-len", "1"}).json()["elements"][0]["order"] ==
        6);
  CHECK(run({"probe", "free:2", "-p", "endo", "--images", "aa,b"}).json()["surjective"]["outcome"] ==
        "fails");
  CHECK(run({"probe", "abelian:2", "-p", "index", "--subgroup", "aa,b", "--j", "3"}).json()["cosets"] ==
        2);
  CHECK(run({"probe", "lamplighter", "-p", "folner", "--m", "4", "--strategy", "boxes"})
            .json()["found"] == true);

  const auto f = run({"folner", "-g", "free:2", "--set", "1,a,A,b,B"}).json();
  CHECK(f["ratios"][0]["ratio"] == "6/5");

  const auto c = run({"converge", "--term", "cyclic:2", "--term", "cyclic:3", "--term",
                      "cyclic:4", "--limit", "remark(abelian:2;a,1)", "--resolution", "4"})
                     .json();
  CHECK(c["rows"].size() == 3);
  CHECK(c["nonincreasing"] == true);

  const auto out = scratch("reduce") / "ball.json";
  std::filesystem::create_directories(out.parent_path());
  const auto r = run({"reduce", "--seq", "01(2)", "--marking", "L2", "--radius", "3", "--mode",
                      "limit", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.json()["mode"] == "limit");
  CHECK(r.json()["reads"].get<int>() > 0);
  std::ifstream in(out);
  CHECK(mgw::ball_from_json(mgw::Json::parse(in)).radius == 3);
  CHECK(run({"reduce", "--seq", "(0)", "--radius", "1"}).json()["vertices"] == 5);
  CHECK(run({"reduce", "--seq", "(0)", "--radius", "1", "--mode", "direct"}).json()["vertices"] ==
        3);

  const auto e = run({"expect", "--seq", "(012)"}).json();
  CHECK(e["agreement"] == true);
  CHECK(e["predicted"]["periodic"] == true);
}

TEST_CASE("config file and flag precedence") {
  const auto dir = scratch("config");
  std::filesystem::create_directories(dir);
  const auto file = dir / "mgw.conf";
  std::ofstream(file) << "# budgets\norder_budget = 77\nmax_resolution = 5\n";
  const auto j = run({"--config", file.string(), "dist", "--a", "free:2", "--b", "free:2",
                      "--resolution", "5"})
                     .json();
  CHECK(j["config"]["order_budget"] == 77);
  CHECK(run({"--config", file.string(), "dist", "--a", "free:2", "--b", "free:2",
             "--resolution", "6"})
            .code == 2);
  const auto over = run({"--config", file.string(), "--set", "order_budget=5", "catalog"}).json();
  CHECK(over["config"]["order_budget"] == 5);
  CHECK(!over["config"].contains("threads"));
  CHECK(run({"--config", (dir / "missing.conf").string(), "catalog"}).code == 2);
  std::ofstream(file) << "order_budget 77\n";
  CHECK(run({"--config", file.string(), "catalog"}).code == 2);
}

TEST_CASE("cache transparency") {
  const auto dir = scratch("cache");
  const std::vector<std::string> cmd{"ball", "-g", "lamplighter", "-r", "4"};
  auto with = [&](std::vector<std::string> pre) {
    pre.insert(pre.end(), cmd.begin(), cmd.end());
    return run(pre);
  };
  const auto plain = with({"--no-cache"});
  const auto first = with({"--cache-dir", dir.string()});
  const auto second = with({"--cache-dir", dir.string()});
  CHECK(plain.out == first.out);
  CHECK(first.out == second.out);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      ++files;
      CHECK(e.path().filename() == "4.json");
      CHECK(e.path().parent_path().parent_path().filename() == "balls");
    }
  }
  CHECK(files == 1);

  // corrupt the entry: a plain read rejects it and --verify-cache rewrites it
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path());
    auto j = mgw::Json::parse(in);
    in.close();
    j["ball"]["edges"].erase(j["ball"]["edges"].begin());
    std::ofstream(e.path()) << j.dump();
  }
  CHECK(with({"--cache-dir", dir.string()}).out == plain.out);
  CHECK(with({"--cache-dir", dir.string(), "--verify-cache"}).out == plain.out);
  std::filesystem::remove_all(dir);
}
