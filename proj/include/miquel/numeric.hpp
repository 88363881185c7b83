#pragma once

/**
 * Exact rational scalars and the zero-test policy shared by every predicate.
 *
 * A Rational is always stored in lowest terms with a positive denominator, so
 * two Rationals are equal iff their (numerator, denominator) pairs are equal.
 * The big-integer arithmetic underneath is GMP's mpz/mpq.
 */

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include "miquel/error.hpp"

namespace miquel {

class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I v) : value_(static_cast<long>(v)) {}  // NOLINT: implicit by design of a scalar

  template <std::unsigned_integral I>
  Rational(I v) : value_(static_cast<unsigned long>(v)) {}  // NOLINT

  explicit Rational(const mpz_class& integer) : value_(integer) {}

  /// Reduces num/den; throws ZeroDenominator when den == 0.
  Rational(const mpz_class& num, const mpz_class& den);

  /// Accepts "p", "-p", "+p", "p/q", "-p/q". Surrounding whitespace is not allowed.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// Bit lengths of |numerator| and denominator (0 has numerator length 0).
  std::size_t numerator_bits() const;
  std::size_t denominator_bits() const;

  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;

  Rational operator-() const { return from_mpq(-value_); }
  Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
  Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
  Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend Rational abs(const Rational& r) { return from_mpq(::abs(r.value_)); }

 private:
  static Rational from_mpq(mpq_class v) {
    Rational r;
    r.value_ = std::move(v);
    return r;
  }

  mpq_class value_;  // canonical: gmpxx keeps arithmetic results reduced
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// num/den in lowest terms with a positive denominator.
inline Rational rational_normalize(const mpz_class& num, const mpz_class& den) {
  return Rational(num, den);
}

struct ToleranceConfig {
  double relative_epsilon = 1e-9;
};

enum class Mode { Exact, Float };

class ScalarMode {
 public:
  static ScalarMode exact() { return ScalarMode(Mode::Exact, {}); }
  /// Throws InvalidArgument unless relative_epsilon > 0.
  static ScalarMode floating(ToleranceConfig tolerance = {});

  Mode kind() const { return kind_; }
  bool is_exact() const { return kind_ == Mode::Exact; }
  /// Meaningless (and unused) in exact mode.
  double epsilon() const { return tolerance_.relative_epsilon; }

  std::string_view name() const { return is_exact() ? "exact" : "float"; }

 private:
  ScalarMode(Mode kind, ToleranceConfig tolerance) : kind_(kind), tolerance_(tolerance) {}

  Mode kind_;
  ToleranceConfig tolerance_;
};

// Scalar helpers so the geometric kernel can be written once for both
// Rational (exact) and double (float) coordinates.
inline double to_double(const Rational& r) { return r.to_double(); }
inline double to_double(double v) { return v; }

template <class T>
T from_rational(const Rational& r);
template <>
inline Rational from_rational<Rational>(const Rational& r) { return r; }
template <>
inline double from_rational<double>(const Rational& r) { return r.to_double(); }

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

/// |value| / max(scale, 1), the quantity compared against epsilon in float mode.
double normalized_residual(double value, double scale);
double normalized_residual(const Rational& value, const Rational& scale);

/// Exact mode: value == 0. Float mode: |value| <= epsilon * max(scale, 1).
bool is_zero(const Rational& value, const Rational& scale, const ScalarMode& mode);
bool is_zero(double value, double scale, const ScalarMode& mode);

/// Decimal rendering used in reports: exact rationals as "p/q", doubles as
/// the shortest string that round-trips.
std::string scalar_text(const Rational& v);
std::string scalar_text(double v);

}  // namespace miquel
