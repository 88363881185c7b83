#pragma once

// Points, lines and circles over a Scalar (Rational or double), plus the
// incidence predicates and the rational second-intersection constructions.
//
// Lines are stored as a*x + b*y + c = 0 and circles in general-equation form
// g*(x^2 + y^2) + d*x + e*y + f = 0. In exact mode both are kept in canonical
// integer form (gcd 1, sign fixed) so equal point sets compare equal. In float
// mode the coefficient vector is scaled to max-abs 1 instead.

#include <array>
#include <iosfwd>
#include <string>

#include "miquel/numeric.hpp"

namespace miquel {

template <Scalar T>
struct Point {
  T x{};
  T y{};

  friend bool operator==(const Point&, const Point&) = default;
};

template <Scalar T>
class Line {
 public:
  /// Canonicalizes; throws DegenerateLine when a == b == 0.
  static Line from_coefficients(T a, T b, T c);

  const T& a() const { return a_; }
  const T& b() const { return b_; }
  const T& c() const { return c_; }
  std::array<T, 3> coefficients() const { return {a_, b_, c_}; }

  T evaluate(const Point<T>& p) const { return a_ * p.x + b_ * p.y + c_; }

  friend bool operator==(const Line&, const Line&) = default;

 private:
  Line(T a, T b, T c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}
  T a_, b_, c_;
};

template <Scalar T>
class Circle {
 public:
  /// Canonicalizes (g > 0). Throws DegenerateCircle when g == 0 or the
  /// squared radius is not positive.
  static Circle from_coefficients(T g, T d, T e, T f);

  const T& g() const { return g_; }
  const T& d() const { return d_; }
  const T& e() const { return e_; }
  const T& f() const { return f_; }
  std::array<T, 4> coefficients() const { return {g_, d_, e_, f_}; }

  Point<T> center() const;
  T squared_radius() const;

  T evaluate(const Point<T>& p) const { return g_ * (p.x * p.x + p.y * p.y) + d_ * p.x + e_ * p.y + f_; }

  friend bool operator==(const Circle&, const Circle&) = default;

 private:
  Circle(T g, T d, T e, T f) : g_(std::move(g)), d_(std::move(d)), e_(std::move(e)), f_(std::move(f)) {}
  T g_, d_, e_, f_;
};

/// A predicate's raw value and the magnitude bound used by the float-mode zero test.
template <Scalar T>
struct Residual {
  T value{};
  T scale{};

  bool vanishes(const ScalarMode& mode) const { return is_zero(value, scale, mode); }
  double normalized() const { return normalized_residual(value, scale); }
};

template <Scalar T>
Line<T> line_from_points(const Point<T>& p, const Point<T>& q);

template <Scalar T>
Point<T> intersect_lines(const Line<T>& l1, const Line<T>& l2);

template <Scalar T>
Residual<T> collinear_residual(const Point<T>& p, const Point<T>& q, const Point<T>& r);

template <Scalar T>
bool collinear(const Point<T>& p, const Point<T>& q, const Point<T>& r, const ScalarMode& mode) {
  return collinear_residual(p, q, r).vanishes(mode);
}

template <Scalar T>
Circle<T> circle_through(const Point<T>& p, const Point<T>& q, const Point<T>& r);

template <Scalar T>
Residual<T> circle_residual(const Circle<T>& c, const Point<T>& p);

template <Scalar T>
bool on_circle(const Circle<T>& c, const Point<T>& p, const ScalarMode& mode) {
  return circle_residual(c, p).vanishes(mode);
}

template <Scalar T>
Residual<T> line_residual(const Line<T>& l, const Point<T>& p);

template <Scalar T>
bool on_line(const Line<T>& l, const Point<T>& p, const ScalarMode& mode) {
  return line_residual(l, p).vanishes(mode);
}

/// The 4x4 determinant with rows (x^2 + y^2, x, y, 1).
template <Scalar T>
Residual<T> concyclic_residual(const Point<T>& p, const Point<T>& q, const Point<T>& r, const Point<T>& s);

template <Scalar T>
bool concyclic(const Point<T>& p, const Point<T>& q, const Point<T>& r, const Point<T>& s,
               const ScalarMode& mode) {
  return concyclic_residual(p, q, r, s).vanishes(mode);
}

/// g2*(d1, e1, f1) - g1*(d2, e2, f2). Throws SameCircle or ConcentricCircles.
template <Scalar T>
Line<T> radical_line(const Circle<T>& c1, const Circle<T>& c2);

/// The other common point of two circles sharing `known`. The quadratic cut on
/// c1 by the radical line has `known` as one root, so the other root is a
/// rational function of the inputs. Throws KnownPointNotOnCircles,
/// SameCircle, ConcentricCircles, or TangentContact (double root at `known`).
template <Scalar T>
Point<T> second_intersection_circle_circle(const Circle<T>& c1, const Circle<T>& c2, const Point<T>& known,
                                           const ScalarMode& mode = ScalarMode::exact());

/// The other intersection of l with c. Throws KnownPointNotIncident or TangentContact.
template <Scalar T>
Point<T> second_intersection_line_circle(const Line<T>& l, const Circle<T>& c, const Point<T>& known,
                                         const ScalarMode& mode = ScalarMode::exact());

template <Scalar T>
Point<T> point_from_rational(const Point<Rational>& p) {
  return {from_rational<T>(p.x), from_rational<T>(p.y)};
}
template <Scalar T>
Line<T> line_from_rational(const Line<Rational>& l) {
  return Line<T>::from_coefficients(from_rational<T>(l.a()), from_rational<T>(l.b()), from_rational<T>(l.c()));
}

template <Scalar T>
std::string to_string(const Point<T>& p);
template <Scalar T>
std::string to_string(const Line<T>& l);
template <Scalar T>
std::string to_string(const Circle<T>& c);

template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Point<T>& p);
template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Line<T>& l);
template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Circle<T>& c);

}  // namespace miquel
