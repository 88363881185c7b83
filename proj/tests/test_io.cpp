#include <doctest.h>

#include <regex>

#include "miquel/chain_json.hpp"
#include "miquel/lines_io.hpp"
#include "miquel/svg.hpp"

using namespace miquel;

namespace {

using Q = Rational;

Line<Q> line(long a, long b, long c) { return Line<Q>::from_coefficients(a, b, c); }

std::vector<Line<Q>> three() { return {line(0, 1, 0), line(1, 0, 0), line(1, 1, -1)}; }
std::vector<Line<Q>> four() { return {line(0, 1, 0), line(1, 0, 0), line(1, 1, -1), line(2, -1, -3)}; }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("gen_lines") {
  const auto lines = gen_lines(4, 42, 10);
  CHECK(lines.size() == 4);
  CHECK(validate_general_position(lines).valid());
  for (const auto& l : lines)
    for (const auto& v : l.coefficients()) {
      CHECK(v.denominator() == 1);
      CHECK(abs(v) <= Q(10));
    }

  const auto tiny = gen_lines(2, 0, 2);
  CHECK(tiny.size() == 2);
  CHECK(validate_general_position(tiny).valid());

  CHECK(gen_lines(8, 7, 10) == gen_lines(8, 7, 10));
  CHECK(gen_lines(8, 7, 10) != gen_lines(8, 8, 10));
  for (int n = 2; n <= 12; ++n) CHECK(validate_general_position(gen_lines(n, 1000 + n, 10)).valid());

  CHECK(code_of([] { gen_lines(1, 0, 10); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { gen_lines(3, 0, 1); }) == ErrorCode::InvalidArgument);
  // bound 2 offers too few directions for forty pairwise non-parallel lines
  CHECK(code_of([] { gen_lines(40, 0, 2); }) == ErrorCode::ExhaustedSampling);
}

TEST_CASE("parse_lines_file") {
  const auto lines = parse_lines_file("# four lines\n0 1 0\n\n1 0 0   # x = 0\n2 2 -2\n  4/2 -1 -3\n");
  CHECK(lines == four());

  auto message = [](std::string_view text) {
    try {
      parse_lines_file(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("1 0 0\n1 2\n").find("line 2") != std::string::npos);
  CHECK(message("1 0 0\n1 2 3 4\n").find("line 2") != std::string::npos);
  CHECK(message("# c\n1 x 0\n").find("line 2") != std::string::npos);
  CHECK(message("1 1/0 0\n").find("line 1") != std::string::npos);
  CHECK(message("1 0 0\n0 0 5\n").find("line 2: a and b are both zero") != std::string::npos);
  CHECK(code_of([] { parse_lines_file("0 0 5\n"); }) == ErrorCode::DegenerateLine);
  CHECK(code_of([] { parse_lines_file("1 2\n"); }) == ErrorCode::ParseError);
  CHECK(parse_lines_file("# nothing\n\n").empty());
}

TEST_CASE("lines file round trip") {
  const std::vector<Line<Q>> lines = {Line<Q>::from_coefficients(Q::parse("1/2"), Q::parse("-3/7"), Q(5)),
                                      line(3, 0, -1), line(1, 1, 1)};
  const auto text = format_lines_file(lines, {"round trip"});
  CHECK(text.rfind("# round trip\n", 0) == 0);
  CHECK(parse_lines_file(text) == lines);
  const auto generated = gen_lines(9, 3, 10);
  CHECK(parse_lines_file(format_lines_file(generated)) == generated);
}

TEST_CASE("chain json: three lines") {
  const auto chain = Chain<Q>::build(three(), ScalarMode::exact());
  const auto json = emit_chain_json(chain);
  CHECK(json.find("\"1,2\": [\"0\", \"0\"]") != std::string::npos);
  CHECK(json.find("\"1,2,3\": [\"1\", \"-1\", \"-1\", \"0\"]") != std::string::npos);
  CHECK(json.find("\"format\": \"miquel-chain/1\"") != std::string::npos);
  CHECK(json.find("millis") == std::string::npos);
  CHECK(json.find("verification") == std::string::npos);
}

TEST_CASE("chain json is byte-stable and round-trips") {
  const auto lines = gen_lines(6, 21, 10);
  const auto a = Chain<Q>::build(lines, ScalarMode::exact());
  const auto ra = verify_chain(a);
  const auto text = emit_chain_json(a, &ra);
  const auto b = Chain<Q>::build(lines, ScalarMode::exact());
  const auto rb = verify_chain(b);
  CHECK(text == emit_chain_json(b, &rb));

  const auto back = parse_chain_json(text);
  REQUIRE(std::holds_alternative<Chain<Q>>(back));
  CHECK(std::get<Chain<Q>>(back) == a);
  CHECK(text.find("\"all_pass\": true") != std::string::npos);
  CHECK(text.find("\"substantive_checks\": ") != std::string::npos);

  const auto f = Chain<double>::build(lines, ScalarMode::floating({1e-9}));
  const auto rf = verify_chain(f);
  const auto ftext = emit_chain_json(f, &rf);
  CHECK(ftext.find("\"mode\": \"float\"") != std::string::npos);
  CHECK(ftext.find("\"epsilon\": 1e-09") != std::string::npos);
  CHECK(ftext.find("\"normalized_residual\": ") != std::string::npos);
  const auto fback = parse_chain_json(ftext);
  REQUIRE(std::holds_alternative<Chain<double>>(fback));
  CHECK(std::get<Chain<double>>(fback) == f);
  CHECK(std::get<Chain<double>>(fback).mode().epsilon() == 1e-9);
}

TEST_CASE("malformed chain json") {
  for (const char* bad : {"", "{", "[]", "{\"format\": \"other\"}",
                          "{\"format\": \"miquel-chain/1\", \"n\": 3, \"mode\": \"quantum\"}",
                          "{\"format\": \"miquel-chain/1\", \"n\": 3, \"mode\": \"exact\"}"})
    CHECK(code_of([&] { parse_chain_json(bad); }) == ErrorCode::ParseError);

  const auto chain = Chain<Q>::build(three(), ScalarMode::exact());
  auto text = emit_chain_json(chain);
  text.replace(text.find("\"1,3\": [\"1\", \"0\"]"), 16, "\"1,3\": [1, 0]");
  CHECK(code_of([&] { parse_chain_json(text); }) == ErrorCode::ParseError);
}

TEST_CASE("svg element counts") {
  const auto c4 = Chain<Q>::build(four(), ScalarMode::exact());
  const auto svg = render_svg(c4);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "<line class=\"line\"") == 4);
  CHECK(count(svg, "class=\"chain-circle\"") == 4);
  CHECK(count(svg, "class=\"chain-point\"") == 7);
  CHECK(svg.find(">P1,2,3,4</text>") != std::string::npos);

  const auto svg3 = render_svg(Chain<Q>::build(three(), ScalarMode::exact()));
  CHECK(count(svg3, "<line class=\"line\"") == 3);
  CHECK(count(svg3, "class=\"chain-circle\"") == 1);
  CHECK(count(svg3, "class=\"chain-point\"") == 3);

  RenderSpec only_points;
  only_points.sizes = {2};
  const auto filtered = render_svg(c4, only_points);
  CHECK(count(filtered, "<line class=\"line\"") == 0);
  CHECK(count(filtered, "class=\"chain-circle\"") == 0);
  CHECK(count(filtered, "class=\"chain-point\"") == 6);

  CHECK(svg == render_svg(c4));
}

TEST_CASE("svg coordinates stay inside the canvas") {
  const auto chain = Chain<Q>::build(gen_lines(5, 2, 10), ScalarMode::exact());
  RenderSpec spec;
  const auto svg = render_svg(chain, spec);
  // Lines are clipped to the canvas; point markers sit inside the framed region.
  const std::regex attr(R"re(\b(x1|y1|x2|y2|cx|cy)="(-?[0-9.]+)")re");
  int seen = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), attr); it != std::sregex_iterator(); ++it) {
    const auto name = (*it)[1].str();
    const double v = std::stod((*it)[2].str());
    if (name[0] == 'c') continue;  // circle centres may lie off canvas
    CHECK(v >= -1e-6);
    CHECK(v <= spec.canvas + 1e-6);
    ++seen;
  }
  CHECK(seen == 4 * 5);
  CHECK(svg.find("-0.000000") == std::string::npos);
}
