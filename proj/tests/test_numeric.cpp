#include <doctest.h>

#include "miquel/numeric.hpp"
#include "miquel/random.hpp"

using namespace miquel;

namespace {

Rational big_random(SplitMix64& rng) {
  // products of several draws give numerators well beyond 64 bits
  Rational r(1);
  for (int i = 0; i < 5; ++i) r *= Rational(mpz_class(static_cast<long>(rng.uniform(-1000000000, 1000000000))), mpz_class(static_cast<long>(rng.uniform(1, 1000000000))));
  return r;
}

}  // namespace

TEST_CASE("rational_normalize reduces and fixes the sign") {
  CHECK(rational_normalize(2, 4).str() == "1/2");
  CHECK(rational_normalize(3, -6).str() == "-1/2");
  const auto zero = rational_normalize(0, 7);
  CHECK(zero.numerator() == 0);
  CHECK(zero.denominator() == 1);
  CHECK(zero.str() == "0");
}

TEST_CASE("zero denominator is a hard error") {
  try {
    rational_normalize(1, 0);
    FAIL("expected ZeroDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroDenominator);
  }
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("rational text form") {
  CHECK(Rational::parse("-3/6") == Rational(mpz_class(-1), mpz_class(2)));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK(Rational::parse("12345678901234567890123/3").str() == "4115226300411522630041");
  for (const char* bad : {"", "abc", "1/-2", "1/", "/2", "1.5", "1 /2", "--1"}) {
    try {
      Rational::parse(bad);
      FAIL("accepted '" << bad << "'");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
}

TEST_CASE("bit lengths") {
  CHECK(Rational(0).numerator_bits() == 0);
  CHECK(Rational(1).numerator_bits() == 1);
  CHECK(Rational::parse("-255/256").numerator_bits() == 8);
  CHECK(Rational::parse("-255/256").denominator_bits() == 9);
}

TEST_CASE("is_zero") {
  const auto exact = ScalarMode::exact();
  CHECK(is_zero(Rational(0), Rational(0), exact));
  const Rational tiny(mpz_class(1), mpz_class("1000000000000000000000000000000"));
  CHECK_FALSE(is_zero(tiny, Rational(1), exact));
  CHECK(is_zero(1e-12, 1.0, ScalarMode::floating({1e-9})));
  CHECK_FALSE(is_zero(1e-6, 1.0, ScalarMode::floating({1e-9})));
  // relative to the scale, floored at 1
  CHECK(is_zero(1e-3, 1e7, ScalarMode::floating({1e-9})));
  CHECK_FALSE(is_zero(1e-8, 1e-3, ScalarMode::floating({1e-9})));
}

TEST_CASE("exact zero test ignores any tolerance") {
  const Rational tiny(mpz_class(1), mpz_class("1000000000000000000000000000000"));
  // The same value under float modes of any epsilon flips; exact never does.
  CHECK(is_zero(tiny, Rational(1), ScalarMode::floating({1e-3})));
  CHECK_FALSE(is_zero(tiny, Rational(1), ScalarMode::exact()));
  CHECK_FALSE(is_zero(1e-300, 1.0, ScalarMode::exact()));
}

TEST_CASE("tolerance must be positive") {
  CHECK_THROWS_AS(ScalarMode::floating({0.0}), Error);
  CHECK_THROWS_AS(ScalarMode::floating({-1e-9}), Error);
  CHECK(ScalarMode::floating().epsilon() == 1e-9);
}

TEST_CASE("property: normalization is idempotent and arithmetic is exact") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    const Rational a = big_random(rng);
    const Rational b = big_random(rng);
    CHECK(Rational(a.numerator(), a.denominator()) == a);
    CHECK(Rational::parse(a.str()) == a);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a.denominator() > 0);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.numerator().get_mpz_t(), a.denominator().get_mpz_t());
    CHECK(g == 1);
  }
}

TEST_CASE("SplitMix64 reference stream") {
  // First outputs for seed 0 from the public reference implementation.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);
  SplitMix64 bounded(7);
  for (int i = 0; i < 1000; ++i) {
    const auto v = bounded.uniform(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
}
