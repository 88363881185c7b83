#include "miquel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace miquel {
namespace {

// Clears denominators and removes the common gcd, then flips the sign so that
// v[lead] is positive. Exact tuples therefore compare equal iff they describe
// the same point set.
template <std::size_t N>
void canonicalize(std::array<Rational, N>& v, std::size_t lead) {
  mpz_class lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.raw().get_den_mpz_t());
  mpz_class gcd = 0;
  std::array<mpz_class, N> ints;
  for (std::size_t i = 0; i < N; ++i) {
    ints[i] = v[i].raw().get_num() * (lcm / v[i].raw().get_den());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (sgn(ints[lead]) < 0) gcd = -gcd;
  for (std::size_t i = 0; i < N; ++i) v[i] = Rational(mpz_class(ints[i] / gcd));
}

template <std::size_t N>
void canonicalize(std::array<double, N>& v, std::size_t lead) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (v[lead] < 0) m = -m;
  for (double& x : v) x /= m;
}

template <Scalar T>
bool finite(const T& v) {
  if constexpr (std::same_as<T, double>) {
    return std::isfinite(v);
  } else {
    return true;
  }
}

template <Scalar T>
T magnitude(const T& v) {
  if constexpr (std::same_as<T, double>) {
    return std::abs(v);
  } else {
    return abs(v);
  }
}

// Accumulates a sum of products while tracking the largest |term| seen.
template <Scalar T>
struct TermSum {
  T value{};
  T scale{};

  void add(const T& term) {
    value += term;
    T m = magnitude(term);
    if (m > scale) scale = std::move(m);
  }
  Residual<T> residual() && { return {std::move(value), std::move(scale)}; }
};

// Leibniz expansion; fine for N <= 4 and it gives the per-product magnitude
// bound the float zero test needs.
template <Scalar T, std::size_t N>
Residual<T> determinant(const std::array<std::array<T, N>, N>& m) {
  std::array<std::size_t, N> perm;
  for (std::size_t i = 0; i < N; ++i) perm[i] = i;
  TermSum<T> sum;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term = m[0][perm[0]];
    for (std::size_t i = 1; i < N; ++i) term *= m[i][perm[i]];
    if (inversions % 2) term = -term;
    sum.add(term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::move(sum).residual();
}

template <Scalar T>
T det3(const T& a, const T& b, const T& c, const T& d, const T& e, const T& f, const T& g, const T& h,
       const T& i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// known + t*u, where u = (b, -a) runs along the line and t is the non-zero
// root of the quadratic obtained by restricting the circle to the line. The
// constant term vanishes because `known` is on the circle, so the roots are
// 0 and -B/A.
template <Scalar T>
Point<T> other_root_along(const Line<T>& l, const Circle<T>& c, const Point<T>& known, const ScalarMode& mode) {
  const T ux = l.b();
  const T uy = -l.a();
  const T quad = c.g() * (ux * ux + uy * uy);
  TermSum<T> lin;
  const T two_g = c.g() + c.g();
  lin.add(two_g * known.x * ux);
  lin.add(two_g * known.y * uy);
  lin.add(c.d() * ux);
  lin.add(c.e() * uy);
  if (is_zero(lin.value, lin.scale, mode))
    throw Error(ErrorCode::TangentContact, "line touches circle only at " + to_string(known));
  const T t = -lin.value / quad;
  Point<T> p{known.x + t * ux, known.y + t * uy};
  if (!finite(p.x) || !finite(p.y)) throw Error(ErrorCode::TangentContact, "second root is not finite");
  return p;
}

}  // namespace

template <Scalar T>
Line<T> Line<T>::from_coefficients(T a, T b, T c) {
  if (!finite(a) || !finite(b) || !finite(c)) throw Error(ErrorCode::DegenerateLine, "non-finite coefficient");
  if (a == T{} && b == T{}) throw Error(ErrorCode::DegenerateLine, "a and b are both zero");
  std::array<T, 3> v{std::move(a), std::move(b), std::move(c)};
  canonicalize(v, v[0] != T{} ? 0 : 1);
  return Line(std::move(v[0]), std::move(v[1]), std::move(v[2]));
}

template <Scalar T>
Circle<T> Circle<T>::from_coefficients(T g, T d, T e, T f) {
  if (!finite(g) || !finite(d) || !finite(e) || !finite(f))
    throw Error(ErrorCode::DegenerateCircle, "non-finite coefficient");
  if (g == T{}) throw Error(ErrorCode::DegenerateCircle, "g is zero (the equation describes a line)");
  std::array<T, 4> v{std::move(g), std::move(d), std::move(e), std::move(f)};
  canonicalize(v, 0);
  T four = T(4);
  if (!(v[1] * v[1] + v[2] * v[2] - four * v[0] * v[3] > T{}))
    throw Error(ErrorCode::DegenerateCircle, "squared radius is not positive");
  return Circle(std::move(v[0]), std::move(v[1]), std::move(v[2]), std::move(v[3]));
}

template <Scalar T>
Point<T> Circle<T>::center() const {
  const T two_g = g_ + g_;
  return {-d_ / two_g, -e_ / two_g};
}

template <Scalar T>
T Circle<T>::squared_radius() const {
  const T four = T(4);
  return (d_ * d_ + e_ * e_ - four * g_ * f_) / (four * g_ * g_);
}

template <Scalar T>
Line<T> line_from_points(const Point<T>& p, const Point<T>& q) {
  if (p == q) throw Error(ErrorCode::CoincidentPoints, "cannot draw a line through " + to_string(p) + " twice");
  return Line<T>::from_coefficients(p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y);
}

template <Scalar T>
Point<T> intersect_lines(const Line<T>& l1, const Line<T>& l2) {
  const T det = l1.a() * l2.b() - l2.a() * l1.b();
  if (det == T{}) throw Error(ErrorCode::ParallelLines, to_string(l1) + " and " + to_string(l2));
  Point<T> p{(l1.b() * l2.c() - l2.b() * l1.c()) / det, (l1.c() * l2.a() - l2.c() * l1.a()) / det};
  if (!finite(p.x) || !finite(p.y)) throw Error(ErrorCode::ParallelLines, "intersection is not finite");
  return p;
}

template <Scalar T>
Residual<T> collinear_residual(const Point<T>& p, const Point<T>& q, const Point<T>& r) {
  const T one = T(1);
  return determinant<T, 3>({{{p.x, p.y, one}, {q.x, q.y, one}, {r.x, r.y, one}}});
}

template <Scalar T>
Circle<T> circle_through(const Point<T>& p, const Point<T>& q, const Point<T>& r) {
  if (p == q || p == r || q == r)
    throw Error(ErrorCode::CoincidentPoints, to_string(p) + ", " + to_string(q) + ", " + to_string(r));
  const T one = T(1);
  const T sp = p.x * p.x + p.y * p.y;
  const T sq = q.x * q.x + q.y * q.y;
  const T sr = r.x * r.x + r.y * r.y;
  // Cofactors of the first row of the 4x4 determinant whose rows are
  // (X^2+Y^2, X, Y, 1) followed by the three given points.
  T g = det3(p.x, p.y, one, q.x, q.y, one, r.x, r.y, one);
  if (g == T{})
    throw Error(ErrorCode::CollinearPoints, to_string(p) + ", " + to_string(q) + ", " + to_string(r));
  T d = -det3(sp, p.y, one, sq, q.y, one, sr, r.y, one);
  T e = det3(sp, p.x, one, sq, q.x, one, sr, r.x, one);
  T f = -det3(sp, p.x, p.y, sq, q.x, q.y, sr, r.x, r.y);
  return Circle<T>::from_coefficients(std::move(g), std::move(d), std::move(e), std::move(f));
}

template <Scalar T>
Residual<T> circle_residual(const Circle<T>& c, const Point<T>& p) {
  TermSum<T> sum;
  sum.add(c.g() * p.x * p.x);
  sum.add(c.g() * p.y * p.y);
  sum.add(c.d() * p.x);
  sum.add(c.e() * p.y);
  sum.add(c.f());
  return std::move(sum).residual();
}

template <Scalar T>
Residual<T> line_residual(const Line<T>& l, const Point<T>& p) {
  TermSum<T> sum;
  sum.add(l.a() * p.x);
  sum.add(l.b() * p.y);
  sum.add(l.c());
  return std::move(sum).residual();
}

template <Scalar T>
Residual<T> concyclic_residual(const Point<T>& p, const Point<T>& q, const Point<T>& r, const Point<T>& s) {
  const T one = T(1);
  auto row = [&](const Point<T>& a) { return std::array<T, 4>{a.x * a.x + a.y * a.y, a.x, a.y, one}; };
  return determinant<T, 4>({row(p), row(q), row(r), row(s)});
}

template <Scalar T>
Line<T> radical_line(const Circle<T>& c1, const Circle<T>& c2) {
  if (c1 == c2) throw Error(ErrorCode::SameCircle, to_string(c1));
  T a = c2.g() * c1.d() - c1.g() * c2.d();
  T b = c2.g() * c1.e() - c1.g() * c2.e();
  T c = c2.g() * c1.f() - c1.g() * c2.f();
  if (a == T{} && b == T{}) {
    if (c == T{}) throw Error(ErrorCode::SameCircle, to_string(c1));
    throw Error(ErrorCode::ConcentricCircles, to_string(c1) + " and " + to_string(c2));
  }
  return Line<T>::from_coefficients(std::move(a), std::move(b), std::move(c));
}

template <Scalar T>
Point<T> second_intersection_circle_circle(const Circle<T>& c1, const Circle<T>& c2, const Point<T>& known,
                                           const ScalarMode& mode) {
  if (!on_circle(c1, known, mode) || !on_circle(c2, known, mode))
    throw Error(ErrorCode::KnownPointNotOnCircles, to_string(known));
  return other_root_along(radical_line(c1, c2), c1, known, mode);
}

template <Scalar T>
Point<T> second_intersection_line_circle(const Line<T>& l, const Circle<T>& c, const Point<T>& known,
                                         const ScalarMode& mode) {
  if (!on_line(l, known, mode) || !on_circle(c, known, mode))
    throw Error(ErrorCode::KnownPointNotIncident, to_string(known));
  return other_root_along(l, c, known, mode);
}

template <Scalar T>
std::string to_string(const Point<T>& p) {
  return "(" + scalar_text(p.x) + ", " + scalar_text(p.y) + ")";
}

template <Scalar T>
std::string to_string(const Line<T>& l) {
  return "(" + scalar_text(l.a()) + ", " + scalar_text(l.b()) + ", " + scalar_text(l.c()) + ")";
}

template <Scalar T>
std::string to_string(const Circle<T>& c) {
  return "(" + scalar_text(c.g()) + ", " + scalar_text(c.d()) + ", " + scalar_text(c.e()) + ", " +
         scalar_text(c.f()) + ")";
}

template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Point<T>& p) { return os << to_string(p); }
template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Line<T>& l) { return os << to_string(l); }
template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Circle<T>& c) { return os << to_string(c); }

#define MIQUEL_INSTANTIATE(T)                                                                                  \
  template class Line<T>;                                                                                     \
  template class Circle<T>;                                                                                   \
  template Line<T> line_from_points(const Point<T>&, const Point<T>&);                                        \
  template Point<T> intersect_lines(const Line<T>&, const Line<T>&);                                          \
  template Residual<T> collinear_residual(const Point<T>&, const Point<T>&, const Point<T>&);                 \
  template Circle<T> circle_through(const Point<T>&, const Point<T>&, const Point<T>&);                       \
  template Residual<T> circle_residual(const Circle<T>&, const Point<T>&);                                    \
  template Residual<T> line_residual(const Line<T>&, const Point<T>&);                                        \
  template Residual<T> concyclic_residual(const Point<T>&, const Point<T>&, const Point<T>&, const Point<T>&); \
  template Line<T> radical_line(const Circle<T>&, const Circle<T>&);                                          \
  template Point<T> second_intersection_circle_circle(const Circle<T>&, const Circle<T>&, const Point<T>&,    \
                                                      const ScalarMode&);                                     \
  template Point<T> second_intersection_line_circle(const Line<T>&, const Circle<T>&, const Point<T>&,        \
                                                    const ScalarMode&);                                       \
  template std::string to_string(const Point<T>&);                                                            \
  template std::string to_string(const Line<T>&);                                                             \
  template std::string to_string(const Circle<T>&);                                                           \
  template std::ostream& operator<<(std::ostream&, const Point<T>&);                                          \
  template std::ostream& operator<<(std::ostream&, const Line<T>&);                                           \
  template std::ostream& operator<<(std::ostream&, const Circle<T>&);

MIQUEL_INSTANTIATE(Rational)
MIQUEL_INSTANTIATE(double)

#undef MIQUEL_INSTANTIATE

}  // namespace miquel
