#pragma once

// Test-only reference computations on raw mpq_class. They follow different
// routes from the kernel (Gaussian elimination instead of cofactors,
// x-or-y substitution instead of the direction-vector parameterization) so
// agreement is evidence rather than tautology.

#include <gmpxx.h>

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Matrix = std::vector<std::vector<Q>>;

inline Q det(Matrix m) {
  const std::size_t n = m.size();
  Q result = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      result = -result;
    }
    result *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const Q factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return result;
}

inline std::optional<std::vector<Q>> solve(Matrix a, std::vector<Q> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Q factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<Q> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

struct Pt {
  Q x, y;
};

/// a1 x + b1 y + c1 = 0 and a2 x + b2 y + c2 = 0.
inline std::optional<Pt> intersect(const std::array<Q, 3>& l1, const std::array<Q, 3>& l2) {
  auto s = solve({{l1[0], l1[1]}, {l2[0], l2[1]}}, {-l1[2], -l2[2]});
  if (!s) return std::nullopt;
  return Pt{(*s)[0], (*s)[1]};
}

/// (d, e, f) of x^2 + y^2 + d x + e y + f = 0 through three points.
inline std::optional<std::array<Q, 3>> circle(const Pt& p, const Pt& q, const Pt& r) {
  auto row = [](const Pt& a) { return std::vector<Q>{a.x, a.y, 1}; };
  auto rhs = [](const Pt& a) { return Q(-(a.x * a.x + a.y * a.y)); };
  auto s = solve({row(p), row(q), row(r)}, {rhs(p), rhs(q), rhs(r)});
  if (!s) return std::nullopt;
  return std::array<Q, 3>{(*s)[0], (*s)[1], (*s)[2]};
}

/// Value of g(x^2+y^2) + d x + e y + f.
inline Q evaluate(const std::array<Q, 4>& c, const Pt& p) {
  return c[0] * (p.x * p.x + p.y * p.y) + c[1] * p.x + c[2] * p.y + c[3];
}

/// Other common point of two circles through `known`: eliminate one
/// coordinate with the radical line (solve for y when its y-coefficient is
/// non-zero, otherwise for x), then use the sum of roots of the quadratic.
inline Pt second_intersection(const std::array<Q, 4>& c1, const std::array<Q, 4>& c2, const Pt& known) {
  const Q a = c2[0] * c1[1] - c1[0] * c2[1];
  const Q b = c2[0] * c1[2] - c1[0] * c2[2];
  const Q c = c2[0] * c1[3] - c1[0] * c2[3];
  const Q& g = c1[0];
  if (b != 0) {
    // y = m x + k
    const Q m = -a / b;
    const Q k = -c / b;
    const Q qa = g * (1 + m * m);
    const Q qb = g * 2 * m * k + c1[1] + c1[2] * m;
    const Q x = -qb / qa - known.x;
    return {x, m * x + k};
  }
  const Q x0 = -c / a;
  const Q qa = g;
  const Q qb = c1[2];
  const Q y = -qb / qa - known.y;
  return {x0, y};
}

}  // namespace oracle
