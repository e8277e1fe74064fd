// Serial versus OpenMP timings for the hot kernels. Each pair of runs is
// also checked for identical output.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "mgw/catalog.hpp"
#include "mgw/kernels.hpp"
#include "mgw/probes.hpp"
#include "mgw/space.hpp"

namespace {

double seconds(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-36s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", name.c_str(),
              serial, parallel, parallel > 0 ? serial / parallel : 0.0,
              same ? "identical" : "MISMATCH");
}

bool bench_ball(const std::string& spec, int radius) {
  const mgw::MarkedGroup g = mgw::instantiate(spec);
  mgw::CayleyBall s, p;
  const double ts = seconds([&] { s = mgw::ball(g, radius, mgw::kDefaultVertexBudget, {true, false}); });
  const double tp = seconds([&] { p = mgw::ball(g, radius, mgw::kDefaultVertexBudget, {true, true}); });
  const bool same = s.words == p.words && s.out == p.out && s.in == p.in;
  report("ball " + spec + " r=" + std::to_string(radius), ts, tp, same);
  return same;
}

bool bench_verdicts(const std::string& spec, int len) {
  const mgw::MarkedGroup g = mgw::instantiate(spec);
  const auto words = mgw::enumerate_words(g.arity(), len);
  std::vector<mgw::Verdict> s, p;
  const double ts = seconds([&] { s = mgw::batch_verdicts(g, words, mgw::Exec::Serial); });
  const double tp = seconds([&] { p = mgw::batch_verdicts(g, words, mgw::Exec::Parallel); });
  bool same = s.size() == p.size();
  for (std::size_t i = 0; same && i < s.size(); ++i) same = s[i].kind == p[i].kind;
  report("verdicts " + spec + " |w|<=" + std::to_string(len), ts, tp, same);
  return same;
}

bool bench_folner(int m) {
  const mgw::MarkedGroup g = mgw::instantiate("lamplighter");
  const std::vector<mgw::Word> K = {mgw::Word::generator(2, 1), mgw::Word::generator(2, 2)};
  const auto F = mgw::lamplighter_box(2 * m - 1);
  // folner_ratio is serial; the parallel side evaluates the generators concurrently.
  std::vector<mgw::Rational> s(K.size()), p(K.size());
  const double ts = seconds([&] {
    mgw::parallel_for(K.size(), mgw::Exec::Serial,
                      [&](std::size_t i) { s[i] = mgw::folner_ratio(g, F, K[i]); });
  });
  const double tp = seconds([&] {
    mgw::parallel_for(K.size(), mgw::Exec::Parallel,
                      [&](std::size_t i) { p[i] = mgw::folner_ratio(g, F, K[i]); });
  });
  bool same = true;
  for (std::size_t i = 0; i < K.size(); ++i) same = same && s[i].text() == p[i].text();
  report("folner lamplighter box m=" + std::to_string(m), ts, tp, same);
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  bool ok = true;
  ok &= bench_ball("free:2", quick ? 7 : 9);
  ok &= bench_ball("heisenberg", quick ? 10 : 16);
  ok &= bench_ball("grig:(012)", quick ? 8 : 12);
  ok &= bench_ball("lamplighter", quick ? 10 : 14);
  ok &= bench_verdicts("grig:(012)", quick ? 5 : 7);
  ok &= bench_verdicts("symshift", quick ? 6 : 8);
  ok &= bench_folner(quick ? 4 : 6);
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
