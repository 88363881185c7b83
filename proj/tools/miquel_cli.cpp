// miquel: build and verify Clifford chains of circles over lines in general
// position, and run the randomized incidence-theorem scenarios.
//
// Exit codes: 0 success / every check passes, 1 some check fails,
// 2 invalid input (parse error, lines not in general position, degenerate chain).

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "miquel/chain_json.hpp"
#include "miquel/lines_io.hpp"
#include "miquel/scenarios.hpp"
#include "miquel/svg.hpp"

namespace {

using namespace miquel;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

struct ModeFlags {
  std::string mode = "exact";
  double epsilon = ToleranceConfig{}.relative_epsilon;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--epsilon", epsilon, "relative tolerance for float mode");
  }
  ScalarMode resolve() const {
    return mode == "exact" ? ScalarMode::exact() : ScalarMode::floating({epsilon});
  }
};

// A path may hold either a lines file or a chain document; documents start with '{'.
AnyChain load_chain(const std::string& path, const ModeFlags& flags, unsigned threads) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_chain_json(text);
  const auto lines = parse_lines_file(text);
  auto options = BuildOptions::from_environment();
  options.threads = threads;
  const auto mode = flags.resolve();
  if (mode.is_exact()) return Chain<Rational>::build(lines, mode, options);
  return Chain<double>::build(lines, mode, options);
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

int cmd_gen(int n, std::uint64_t seed, std::int64_t bound, const std::string& out) {
  const auto lines = gen_lines(n, seed, bound);
  write_output(out, format_lines_file(lines, {"miquel gen --n " + std::to_string(n) + " --seed " +
                                                  std::to_string(seed) + " --bound " + std::to_string(bound),
                                              "a b c  (a*x + b*y + c = 0)"}));
  return kExitOk;
}

int cmd_build(const std::string& in, const ModeFlags& flags, unsigned threads, const std::string& out) {
  const auto chain = load_chain(in, flags, threads);
  std::visit([&](const auto& c) { write_output(out, emit_chain_json(c)); }, chain);
  return kExitOk;
}

int cmd_verify(const std::string& in, const ModeFlags& flags, unsigned threads, const std::string& json) {
  const auto chain = load_chain(in, flags, threads);
  return std::visit(
      [&](const auto& c) {
        const auto report = verify_chain(c, threads);
        std::cout << "n=" << c.line_count() << " mode=" << c.mode().name() << " points=" << report.points
                  << " circles=" << report.circles << " checks=" << report.checks.size()
                  << " substantive=" << report.substantive_checks
                  << " max_normalized_residual=" << scalar_text(report.max_normalized_residual) << "\n";
        for (const auto& check : report.checks)
          if (!check.pass)
            std::cout << "FAIL P[" << check.point.label() << "] on C[" << check.circle.label()
                      << "] residual=" << scalar_text(check.residual.value) << "\n";
        std::cout << (report.all_pass ? "all checks pass" : "some checks FAIL") << "\n";
        if (!json.empty()) write_output(json, emit_chain_json(c, &report));
        return report.all_pass ? kExitOk : kExitCheckFailed;
      },
      chain);
}

template <Scalar T>
bool run_named_scenario(ScenarioId id, const ScenarioConfig& config) {
  const auto results = run_scenarios<T>(id, config);
  std::size_t passed = 0;
  double worst = 0;
  for (const auto& r : results) {
    if (r.pass) ++passed;
    worst = std::max(worst, r.witness.residual.normalized());
    if (config.fault && r.pass)
      std::cout << "  note: negative control passed for seed " << r.seed << " (coincidence)\n";
    if (!config.fault && !r.pass)
      std::cout << "  FAIL seed " << r.seed << ": " << r.witness.predicate
                << " residual=" << scalar_text(r.witness.residual.value) << "\n";
  }
  std::cout << std::left << std::setw(28) << scenario_name(id) << (config.fault ? " [fault] " : " ") << passed
            << "/" << results.size() << " pass, max normalized residual " << scalar_text(worst) << "\n";
  return config.fault || passed == results.size();
}

int cmd_scenario(const std::string& name, int seeds, std::uint64_t first_seed, std::int64_t bound,
                 const ModeFlags& flags, bool fault) {
  std::vector<ScenarioId> ids;
  if (name == "all") {
    ids.assign(kAllScenarios.begin(), kAllScenarios.end());
  } else if (auto id = parse_scenario_name(name)) {
    ids.push_back(*id);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown scenario '" + name + "'");
  }
  ScenarioConfig config;
  config.mode = flags.resolve();
  config.coordinate_bound = bound;
  config.fault = fault;
  for (int i = 0; i < seeds; ++i) config.seeds.push_back(first_seed + static_cast<std::uint64_t>(i));
  bool ok = true;
  for (auto id : ids) {
    ok = (config.mode.is_exact() ? run_named_scenario<Rational>(id, config) : run_named_scenario<double>(id, config)) &&
         ok;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_render(const std::string& in, const ModeFlags& flags, const RenderSpec& spec, const std::string& out) {
  const auto chain = load_chain(in, flags, 1);
  std::visit([&](const auto& c) { write_output(out, render_svg(c, spec)); }, chain);
  return kExitOk;
}

int cmd_stats(const std::string& in, const ModeFlags& flags, unsigned threads) {
  const auto chain = load_chain(in, flags, threads);
  std::visit(
      [&](const auto& c) {
        const auto stats = chain_stats(c);
        std::cout << "n=" << c.line_count() << " mode=" << c.mode().name() << " objects=" << stats.total_objects
                  << "\n";
        std::cout << std::setw(6) << "size" << std::setw(9) << "objects" << std::setw(10) << "num_bits"
                  << std::setw(10) << "den_bits" << std::setw(12) << "millis" << "\n";
        for (const auto& l : stats.levels) {
          std::cout << std::setw(6) << l.size << std::setw(9) << l.objects << std::setw(10) << l.max_numerator_bits
                    << std::setw(10) << l.max_denominator_bits << std::setw(12) << std::fixed
                    << std::setprecision(3) << l.millis << "\n";
        }
        std::cout << "point coincidences: " << stats.point_coincidences.size()
                  << ", circle coincidences: " << stats.circle_coincidences.size() << "\n";
      },
      chain);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford chains of circles over lines in general position"};
  app.require_subcommand(1);

  int n = 4;
  std::uint64_t seed = 0;
  std::int64_t bound = 10;
  std::string in, out, json;
  unsigned threads = 1;
  ModeFlags flags;

  auto* gen = app.add_subcommand("gen", "generate lines in general position");
  gen->add_option("--n", n, "number of lines")->required();
  gen->add_option("--seed", seed, "SplitMix64 seed")->required();
  gen->add_option("--bound", bound, "coefficient bound");
  gen->add_option("-o,--out", out, "output lines file (default stdout)");

  auto* build = app.add_subcommand("build", "build a chain and write its JSON document");
  build->add_option("--in", in, "lines file")->required();
  flags.attach(build);
  build->add_option("--threads", threads, "worker threads (0 = all cores)");
  build->add_option("-o,--out", out, "output JSON (default stdout)");

  auto* verify = app.add_subcommand("verify", "verify every incidence of a chain");
  verify->add_option("--in", in, "lines file or chain document")->required();
  flags.attach(verify);
  verify->add_option("--threads", threads, "worker threads (0 = all cores)");
  verify->add_option("--json", json, "also write the chain document with the report");

  std::string scenario_name_arg;
  int seeds = 100;
  std::uint64_t first_seed = 1;
  bool fault = false;
  auto* scenario = app.add_subcommand("scenario", "run randomized theorem checks");
  scenario->add_option("name", scenario_name_arg,
                       "miquel-first, first-reciprocal, pivot, four-lines, pentagon, four-circle-lemma, "
                       "four-circle-lemma-collinear or all")
      ->required();
  scenario->add_option("--seeds", seeds, "number of seeds");
  scenario->add_option("--first-seed", first_seed, "first seed (seeds are consecutive)");
  scenario->add_option("--bound", bound, "coordinate bound");
  scenario->add_flag("--fault", fault, "run the negative controls instead");
  flags.attach(scenario);

  RenderSpec spec;
  std::string sizes;
  auto* render = app.add_subcommand("render", "draw a chain as SVG");
  render->add_option("--in", in, "lines file or chain document")->required();
  render->add_option("-o,--out", out, "output SVG (default stdout)");
  render->add_option("--sizes", sizes, "comma-separated subset sizes to draw (1 = lines)");
  render->add_option("--stroke-width", spec.stroke_width);
  render->add_option("--margin", spec.margin);
  flags.attach(render);

  auto* stats = app.add_subcommand("stats", "per-level object counts, bit growth and timing");
  stats->add_option("--in", in, "lines file or chain document")->required();
  stats->add_option("--threads", threads, "worker threads (0 = all cores)");
  flags.attach(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*gen) return cmd_gen(n, seed, bound, out);
    if (*build) return cmd_build(in, flags, threads, out);
    if (*verify) return cmd_verify(in, flags, threads, json);
    if (*scenario) return cmd_scenario(scenario_name_arg, seeds, first_seed, bound, flags, fault);
    if (*render) {
      spec.sizes = parse_sizes(sizes);
      return cmd_render(in, flags, spec, out);
    }
    if (*stats) return cmd_stats(in, flags, threads);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
