#pragma once

// Lines files: one "a b c" record per line (a*x + b*y + c = 0), each
// coefficient a rational "p" or "p/q". '#' starts a comment; blank lines are
// ignored.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "miquel/geometry.hpp"

namespace miquel {

/// Draws at most this many candidate lines before giving up.
inline constexpr int kGenLinesBudget = 100000;

/// n canonical lines with integer coefficients in [-bound, bound] in general
/// position. Candidates come from SplitMix64(seed) as (a, b, c) triples and are
/// kept when they are not degenerate, duplicated, parallel to a kept line, or
/// concurrent with two kept lines. Throws ExhaustedSampling when the budget
/// runs out and InvalidArgument for n < 2 or bound < 2.
std::vector<Line<Rational>> gen_lines(int n, std::uint64_t seed, std::int64_t bound);

/// Throws ParseError (with 1-based line number) or DegenerateLine.
std::vector<Line<Rational>> parse_lines_file(std::string_view text);

/// Inverse of parse_lines_file; `header` lines are written as '#' comments.
std::string format_lines_file(const std::vector<Line<Rational>>& lines, const std::vector<std::string>& header = {});

}  // namespace miquel
