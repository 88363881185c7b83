#include "miquel/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace miquel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateLine: return "DegenerateLineError";
    case ErrorCode::DegenerateCircle: return "DegenerateCircle";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::ParallelLines: return "ParallelLines";
    case ErrorCode::CollinearPoints: return "CollinearPoints";
    case ErrorCode::SameCircle: return "SameCircle";
    case ErrorCode::ConcentricCircles: return "ConcentricCircles";
    case ErrorCode::KnownPointNotOnCircles: return "KnownPointNotOnCircles";
    case ErrorCode::KnownPointNotIncident: return "KnownPointNotIncident";
    case ErrorCode::TangentContact: return "TangentContact";
    case ErrorCode::DuplicateLine: return "DuplicateLine";
    case ErrorCode::GeneralPositionViolation: return "GeneralPositionViolation";
    case ErrorCode::ChainDegeneracy: return "ChainDegeneracy";
    case ErrorCode::DegenerateDraw: return "DegenerateDraw";
    case ErrorCode::ExhaustedSampling: return "ExhaustedSampling";
  }
  return "Unknown";
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::ZeroDenominator, "denominator is zero");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

namespace {

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!is_digits(s)) throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(whole) + "'");
  mpz_class v(std::string(s), 10);
  return negative ? mpz_class(-v) : v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const auto den_text = text.substr(slash + 1);
  if (!is_digits(den_text)) throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  return Rational(parse_integer(text.substr(0, slash), text), mpz_class(std::string(den_text), 10));
}

std::size_t Rational::numerator_bits() const {
  if (is_zero()) return 0;
  return mpz_sizeinbase(value_.get_num_mpz_t(), 2);
}

std::size_t Rational::denominator_bits() const {
  return mpz_sizeinbase(value_.get_den_mpz_t(), 2);
}

std::string Rational::str() const { return value_.get_str(10); }

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

ScalarMode ScalarMode::floating(ToleranceConfig tolerance) {
  if (!(tolerance.relative_epsilon > 0) || !std::isfinite(tolerance.relative_epsilon))
    throw Error(ErrorCode::InvalidArgument, "relative_epsilon must be a positive finite number");
  return ScalarMode(Mode::Float, tolerance);
}

double normalized_residual(double value, double scale) {
  return std::abs(value) / std::max(std::abs(scale), 1.0);
}

double normalized_residual(const Rational& value, const Rational& scale) {
  if (value.is_zero()) return 0.0;
  const Rational floor = std::max(abs(scale), Rational(1));
  return (abs(value) / floor).to_double();
}

bool is_zero(const Rational& value, const Rational& scale, const ScalarMode& mode) {
  if (mode.is_exact()) return value.is_zero();
  return normalized_residual(value, scale) <= mode.epsilon();
}

bool is_zero(double value, double scale, const ScalarMode& mode) {
  if (mode.is_exact()) return value == 0.0;
  return normalized_residual(value, scale) <= mode.epsilon();
}

std::string scalar_text(const Rational& v) { return v.str(); }

std::string scalar_text(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

}  // namespace miquel
