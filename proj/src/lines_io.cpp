#include "miquel/lines_io.hpp"

#include <sstream>

#include "miquel/chain.hpp"
#include "miquel/random.hpp"

namespace miquel {

std::vector<Line<Rational>> gen_lines(int n, std::uint64_t seed, std::int64_t bound) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "gen_lines needs n >= 2");
  if (bound < 2) throw Error(ErrorCode::InvalidArgument, "gen_lines needs bound >= 2");
  SplitMix64 rng(seed);
  std::vector<Line<Rational>> lines;
  for (int draw = 0; draw < kGenLinesBudget && static_cast<int>(lines.size()) < n; ++draw) {
    const auto a = rng.uniform(-bound, bound);
    const auto b = rng.uniform(-bound, bound);
    const auto c = rng.uniform(-bound, bound);
    if (a == 0 && b == 0) continue;
    lines.push_back(Line<Rational>::from_coefficients(a, b, c));
    bool ok = true;
    try {
      ok = validate_general_position(lines).valid();
    } catch (const Error&) {  // duplicate
      ok = false;
    }
    if (!ok) lines.pop_back();
  }
  if (static_cast<int>(lines.size()) < n)
    throw Error(ErrorCode::ExhaustedSampling, "could not place " + std::to_string(n) +
                                                  " lines in general position with bound " + std::to_string(bound));
  return lines;
}

std::vector<Line<Rational>> parse_lines_file(std::string_view text) {
  std::vector<Line<Rational>> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (int lineno = 1; std::getline(in, raw); ++lineno) {
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const auto where = "line " + std::to_string(lineno);
    if (tokens.size() != 3)
      throw Error(ErrorCode::ParseError, where + ": expected 3 coefficients, found " + std::to_string(tokens.size()));
    try {
      lines.push_back(Line<Rational>::from_coefficients(Rational::parse(tokens[0]), Rational::parse(tokens[1]),
                                                        Rational::parse(tokens[2])));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateLine) throw Error(ErrorCode::DegenerateLine, where + ": a and b are both zero");
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }
  return lines;
}

std::string format_lines_file(const std::vector<Line<Rational>>& lines, const std::vector<std::string>& header) {
  std::string out;
  for (const auto& h : header) out += "# " + h + "\n";
  for (const auto& l : lines) out += l.a().str() + " " + l.b().str() + " " + l.c().str() + "\n";
  return out;
}

}  // namespace miquel
