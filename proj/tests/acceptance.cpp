// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
// usage: acceptance_tests <path-to-miquel-cli> <work-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "miquel/chain.hpp"
#include "miquel/lines_io.hpp"
#include "miquel/scenarios.hpp"

using namespace miquel;
namespace fs = std::filesystem;

namespace {

using Q = Rational;

constexpr int kSeedsPerN = 20;
constexpr std::int64_t kBound = 10;

int failures = 0;

void report(int id, bool ok, const std::string& what, double seconds) {
  std::printf("%s criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void note(const std::string& text) { std::printf("    %s\n", text.c_str()); }

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t seed_for(int n, int k) { return static_cast<std::uint64_t>(1000 * n + k); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

// 1, 3 and 5 share the same exact chains.
struct ExactOutcome {
  bool theorem = true;
  bool counts = true;
  bool recipes = true;
  std::size_t checks = 0;
  std::size_t audited = 0;
  std::string problem;
  double seconds = 0;
};

ExactOutcome exact_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  ExactOutcome out;
  for (int n = 3; n <= 8; ++n) {
    double worst = 0;
    for (int k = 1; k <= kSeedsPerN; ++k) {
      const auto s0 = std::chrono::steady_clock::now();
      const auto chain = Chain<Q>::build(gen_lines(n, seed_for(n, k), kBound), ScalarMode::exact());
      const auto rep = verify_chain(chain);
      worst = std::max(worst, since(s0));
      out.checks += rep.checks.size();
      bool zero = rep.all_pass;
      for (const auto& c : rep.checks) zero = zero && c.residual.value.is_zero();
      if (!zero) {
        out.theorem = false;
        if (out.problem.empty()) out.problem = "nonzero residual at n=" + std::to_string(n);
      }
      if (chain.point_count() + chain.circle_count() != chain_object_count(n)) out.counts = false;
      if (n <= 6) {
        const auto audit = audit_recipes(chain);
        out.audited += audit.recipes_checked;
        if (!audit.consistent()) {
          out.recipes = false;
          if (out.problem.empty()) out.problem = "recipe mismatch at n=" + std::to_string(n);
        }
      }
    }
    note("n=" + std::to_string(n) + ": slowest instance " + std::to_string(worst) + "s");
  }
  out.seconds = since(t0);
  return out;
}

void counts(const ExactOutcome& exact) {
  bool ok = exact.counts;
  for (int n = 2; n <= 8; ++n) {
    const auto subsets = enumerate_subsets(n);
    ok = ok && subsets.size() == (std::size_t{1} << n) - 1 - static_cast<std::size_t>(n);
  }
  const auto two = Chain<Q>::build(gen_lines(2, 1, kBound), ScalarMode::exact());
  ok = ok && two.point_count() == 1 && two.circle_count() == 0;
  ok = ok && chain_object_count(4) == 11 && chain_object_count(5) == 26 && chain_object_count(6) == 57;
  report(3, ok, "object totals 2^n-1-n for n=2..8", 0);
}

void worked_instance() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Line<Q>> lines = {Line<Q>::from_coefficients(0, 1, 0), Line<Q>::from_coefficients(1, 0, 0),
                                      Line<Q>::from_coefficients(1, 1, -1), Line<Q>::from_coefficients(2, -1, -3)};
  const auto chain = Chain<Q>::build(lines, ScalarMode::exact());
  const Subset all = Subset::of({0, 1, 2, 3});
  const Point<Q> expected{Q(72) / Q(65), Q(9) / Q(65)};
  bool ok = chain.point(all) == expected;
  for (int i = 0; i < 4; ++i) ok = ok && on_circle(chain.circle(all.without(i)), expected, ScalarMode::exact());
  report(2, ok, "four-line instance gives P1,2,3,4 = " + to_string(chain.point(all)), since(t0));
}

void scenario_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (auto id : kAllScenarios) {
    ScenarioConfig good;
    for (std::uint64_t s = 1; s <= 100; ++s) good.seeds.push_back(s);
    ScenarioConfig bad = good;
    bad.fault = true;
    int passed = 0;
    int caught = 0;
    for (const auto& r : run_scenarios<Q>(id, good)) passed += r.pass ? 1 : 0;
    for (const auto& r : run_scenarios<Q>(id, bad)) caught += r.pass ? 0 : 1;
    note(std::string(scenario_name(id)) + ": " + std::to_string(passed) + "/100 pass, fault control fails " +
         std::to_string(caught) + "/100");
    ok = ok && passed == 100 && caught >= 99;
  }
  report(4, ok, "seven scenarios 100/100 exact, negative controls >= 99/100", since(t0));
}

void float_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0;
  for (int n = 3; n <= 6; ++n) {
    for (int k = 1; k <= kSeedsPerN; ++k) {
      try {
        const auto chain =
            Chain<double>::build(gen_lines(n, seed_for(n, k), kBound), ScalarMode::floating({1e-9}));
        const auto rep = verify_chain(chain);
        ok = ok && rep.all_pass;
        worst = std::max(worst, rep.max_normalized_residual);
      } catch (const Error& e) {
        ok = false;
        note(std::string("float build failed: ") + e.what());
      }
    }
  }
  ok = ok && worst <= 1e-6;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", worst);

  // bit growth per level on the largest exact instance
  const auto chain = Chain<Q>::build(gen_lines(8, seed_for(8, 1), kBound), ScalarMode::exact());
  const auto stats = chain_stats(chain);
  std::string growth;
  for (const auto& level : stats.levels) {
    growth += (growth.empty() ? "" : " ") + std::to_string(level.size) + ":" +
              std::to_string(level.max_numerator_bits) + "/" + std::to_string(level.max_denominator_bits);
  }
  note("exact n=8 bit lengths per level (size:num/den): " + growth);
  report(6, ok, std::string("float n=3..6, eps 1e-9, all pass, max normalized residual ") + buf, since(t0));
}

void determinism(const fs::path& cli, const fs::path& work) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto exe = quote(cli);
  bool ok = true;
  std::vector<std::string> names;
  for (int round = 0; round < 2; ++round) {
    const auto tag = std::to_string(round);
    const auto lines = work / ("det_lines_" + tag + ".txt");
    const auto built = work / ("det_build_" + tag + ".json");
    const auto verified = work / ("det_verify_" + tag + ".json");
    const auto fverified = work / ("det_fverify_" + tag + ".json");
    const auto threads = round == 0 ? " --threads 1" : " --threads 3";
    ok = ok && run(exe + " gen --n 7 --seed 2024 --bound 10 -o " + quote(lines)) == 0;
    ok = ok && run(exe + " build --in " + quote(lines) + threads + " -o " + quote(built)) == 0;
    ok = ok && run(exe + " verify --in " + quote(lines) + threads + " --json " + quote(verified) + " > /dev/null") == 0;
    ok = ok && run(exe + " verify --in " + quote(lines) + " --mode float --epsilon 1e-9" + threads + " --json " +
                   quote(fverified) + " > /dev/null") == 0;
  }
  for (const char* stem : {"det_lines_", "det_build_", "det_verify_", "det_fverify_"}) {
    const auto suffix = std::string(stem) == "det_lines_" ? ".txt" : ".json";
    const auto a = slurp(work / (std::string(stem) + "0" + suffix));
    const auto b = slurp(work / (std::string(stem) + "1" + suffix));
    ok = ok && !a.empty() && a == b;
  }
  report(7, ok, "gen, build and verify --json byte-identical across runs and thread counts", since(t0));
}

void degenerate_inputs(const fs::path& cli, const fs::path& work) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto exe = quote(cli);
  struct Case {
    std::string name;
    std::string lines;
    std::string expect;
  };
  const std::vector<Case> cases = {
      {"parallel", "1 0 0\n0 1 0\n1 0 -1\n", "parallel lines {0,2}"},
      {"concurrent", "0 1 0\n1 0 0\n1 1 -1\n2 -1 -2\n", "concurrent lines {0,2,3}"},
  };
  bool ok = true;
  for (const auto& c : cases) {
    const auto in = work / ("degenerate_" + c.name + ".txt");
    const auto err = work / ("degenerate_" + c.name + ".err");
    spit(in, c.lines);
    for (const char* sub : {"build", "verify"}) {
      const int code = run(exe + " " + sub + " --in " + quote(in) + " > /dev/null 2> " + quote(err));
      const auto message = slurp(err);
      const bool good = code == 2 && message.find(c.expect) != std::string::npos;
      if (!good) note(c.name + " " + sub + ": exit " + std::to_string(code) + ", stderr: " + message);
      ok = ok && good;
    }
  }
  report(8, ok, "parallel and concurrent inputs exit 2 naming the offending line indices", since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <miquel-cli> <work-dir>\n", argv[0]);
    return 2;
  }
  const fs::path cli = fs::absolute(argv[1]);
  const fs::path work = fs::absolute(argv[2]);
  fs::create_directories(work);

  try {
    const auto exact = exact_suite();
    report(1, exact.theorem,
           "exact chains n=3..8 x " + std::to_string(kSeedsPerN) + " seeds, " + std::to_string(exact.checks) +
               " incidences, all residuals zero" + (exact.problem.empty() ? "" : "; " + exact.problem),
           exact.seconds);
    worked_instance();
    counts(exact);
    scenario_suite();
    report(5, exact.recipes,
           "every admissible recipe reproduces the canonical object, n<=6 (" + std::to_string(exact.audited) +
               " recipes)",
           0);
    float_suite();
    determinism(cli, work);
    degenerate_inputs(cli, work);
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
