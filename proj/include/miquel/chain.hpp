#pragma once

// The Clifford chain over n lines in general position. Every index subset S of
// size >= 2 names one object: a point P_S when |S| is even, a circle C_S when
// |S| is odd. Objects are built level by level (|S| = 2, 3, 4, ...):
//
//   |S| = 2        P_S = intersection of the two lines
//   |S| odd        C_S = circle through P_{S-i}, P_{S-j}, P_{S-k}  (i<j<k smallest in S)
//   |S| even >= 4  P_S = other common point of C_{S-i} and C_{S-j}, known P_{S-{i,j}}
//
// verify_chain then checks the incidences the construction did not force.

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "miquel/geometry.hpp"

namespace miquel {

inline constexpr int kMaxChainLines = 30;
inline constexpr int kDefaultChainCap = 12;

/// A set of line indices (0-based) packed into a bitmask.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}
  static Subset of(std::initializer_list<int> indices);

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool names_point() const { return size() >= 2 && size() % 2 == 0; }
  constexpr bool names_circle() const { return size() >= 3 && size() % 2 == 1; }
  constexpr Subset without(int i) const { return Subset(bits_ & ~(1u << i)); }

  /// Ascending member indices.
  std::vector<int> members() const;

  /// 1-based, comma separated: {0,1,3} -> "1,2,4".
  std::string label() const;
  /// Inverse of label(); throws ParseError.
  static Subset parse_label(std::string_view text);

  friend constexpr bool operator==(Subset, Subset) = default;
  /// (size, bitmask) order, i.e. the construction and reporting order.
  friend constexpr std::strong_ordering operator<=>(Subset a, Subset b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint32_t bits_ = 0;
};

/// All subsets of {0..n-1} with at least two members, in (size, bitmask) order.
std::vector<Subset> enumerate_subsets(int n);

/// 2^n - 1 - n.
std::uint64_t chain_object_count(int n);

struct GeneralPositionReport {
  std::vector<std::array<int, 2>> parallel_pairs;
  std::vector<std::array<int, 3>> concurrent_triples;

  bool valid() const { return parallel_pairs.empty() && concurrent_triples.empty(); }
  /// Human-readable list of offending 0-based index groups.
  std::string describe() const;
};

/// Throws DuplicateLine when two lines are identical.
GeneralPositionReport validate_general_position(const std::vector<Line<Rational>>& lines);

enum class RecipeKind { LineIntersection, Circumcircle, SecondIntersection };

/// How an object was built: the indices removed from S to reach its parents.
struct Recipe {
  RecipeKind kind = RecipeKind::LineIntersection;
  std::vector<int> removed;

  std::string describe(Subset s) const;
  friend bool operator==(const Recipe&, const Recipe&) = default;
};

/// The smallest-index recipe build_chain uses for S.
Recipe canonical_recipe(Subset s);

struct BuildOptions {
  /// Worker threads per level; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// Upper bound on n. The CHAIN_MAX_N environment variable overrides the default.
  int max_lines = kDefaultChainCap;

  static BuildOptions from_environment();
};

template <Scalar T>
class Chain {
 public:
  /// Builds every object; throws GeneralPositionViolation, ChainDegeneracy,
  /// or InvalidArgument (n outside [2, max_lines]).
  static Chain build(const std::vector<Line<Rational>>& lines, const ScalarMode& mode,
                     const BuildOptions& options = {});

  /// Wraps already-computed objects (e.g. from a stored document). Every
  /// subset must be present; throws InvalidArgument otherwise.
  static Chain assemble(std::vector<Line<T>> lines, const ScalarMode& mode,
                        const std::vector<std::pair<Subset, Point<T>>>& points,
                        const std::vector<std::pair<Subset, Circle<T>>>& circles);

  int line_count() const { return static_cast<int>(lines_.size()); }
  const std::vector<Line<T>>& lines() const { return lines_; }
  const ScalarMode& mode() const { return mode_; }

  /// Throws InvalidArgument when S does not name a point (or circle).
  const Point<T>& point(Subset s) const;
  const Circle<T>& circle(Subset s) const;
  const Recipe& recipe(Subset s) const;

  std::vector<Subset> subsets() const { return enumerate_subsets(line_count()); }
  std::size_t point_count() const;
  std::size_t circle_count() const;

  /// Wall time spent on each level, index = subset size (0 and 1 unused).
  const std::vector<double>& level_millis() const { return level_millis_; }

  /// Same lines, mode and objects; timings are ignored.
  friend bool operator==(const Chain& a, const Chain& b) {
    return a.lines_ == b.lines_ && a.mode_.kind() == b.mode_.kind() && a.points_ == b.points_ &&
           a.circles_ == b.circles_ && a.recipes_ == b.recipes_;
  }

 private:
  Chain(std::vector<Line<T>> lines, const ScalarMode& mode);

  std::vector<Line<T>> lines_;
  ScalarMode mode_;
  std::vector<std::optional<Point<T>>> points_;    // indexed by bitmask
  std::vector<std::optional<Circle<T>>> circles_;  // indexed by bitmask
  std::vector<Recipe> recipes_;                    // indexed by bitmask
  std::vector<double> level_millis_;
};

/// A point-on-circle incidence: P_point lies on C_circle.
template <Scalar T>
struct IncidenceCheck {
  Subset circle;
  Subset point;
  bool guaranteed = false;  // forced by construction rather than by the theorem
  Residual<T> residual;
  bool pass = false;
};

template <Scalar T>
struct VerificationReport {
  std::vector<IncidenceCheck<T>> checks;
  std::size_t points = 0;
  std::size_t circles = 0;
  std::size_t substantive_checks = 0;
  bool all_pass = true;
  double max_normalized_residual = 0.0;
};

/// Checks P_S on C_{S-i} for every even |S| >= 4 and i in S, and P_{S-i} on C_S
/// for every odd |S| >= 5 and i in S. Failures are reported, never thrown.
template <Scalar T>
VerificationReport<T> verify_chain(const Chain<T>& chain, unsigned threads = 1);

struct LevelStats {
  int size = 0;  // subset size
  std::size_t objects = 0;
  std::size_t max_numerator_bits = 0;
  std::size_t max_denominator_bits = 0;
  double millis = 0.0;
};

struct ChainStats {
  std::vector<LevelStats> levels;  // sizes 2..n
  std::size_t total_objects = 0;
  /// Pairs of distinct subsets that produced identical points / circles.
  std::vector<std::pair<Subset, Subset>> point_coincidences;
  std::vector<std::pair<Subset, Subset>> circle_coincidences;
};

/// Bit lengths are measured on canonical forms (coordinates for points,
/// integer coefficients for circles); they stay zero in float mode.
template <Scalar T>
ChainStats chain_stats(const Chain<T>& chain);

struct RecipeMismatch {
  Subset subset;
  Recipe recipe;
  std::string detail;
};

struct RecipeAudit {
  std::size_t recipes_checked = 0;
  std::vector<RecipeMismatch> mismatches;
  bool consistent() const { return mismatches.empty(); }
};

/// Rebuilds every object from every admissible pair (points) or triple
/// (circles) of parents and compares with the stored object. Exact equality
/// in exact mode; in float mode points are compared with the mode tolerance.
template <Scalar T>
RecipeAudit audit_recipes(const Chain<T>& chain);

}  // namespace miquel
