#pragma once

// Randomized constructive checks of the classical incidence theorems the
// chain relies on. Each scenario draws a random rational configuration that
// satisfies a theorem's hypotheses, builds the remaining objects with field
// operations and rational second intersections only, and evaluates the
// theorem's conclusion as a single predicate.
//
// With `fault` set, one hypothesis is deliberately broken so the conclusion
// should fail; this proves the predicate is not vacuously true.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "miquel/geometry.hpp"

namespace miquel {

enum class ScenarioId {
  MiquelFirst,               // circles A, C, D through B; H, I, J collinear
  FirstReciprocal,           // FH and GI meet on circle A
  Pivot,                     // circles ADF, BDE, CEF share a point
  FourLines,                 // four circumcircles share the Miquel point
  Pentagon,                  // five Miquel points are concyclic
  FourCircleLemma,           // A, B, C, D concyclic => M, N, P, Q concyclic
  FourCircleLemmaCollinear,  // A, B, C, D collinear => M, N, P, Q concyclic
};

inline constexpr std::array<ScenarioId, 7> kAllScenarios = {
    ScenarioId::MiquelFirst, ScenarioId::FirstReciprocal,         ScenarioId::Pivot,
    ScenarioId::FourLines,   ScenarioId::Pentagon,                ScenarioId::FourCircleLemma,
    ScenarioId::FourCircleLemmaCollinear,
};

std::string_view scenario_name(ScenarioId id);
std::optional<ScenarioId> parse_scenario_name(std::string_view name);

/// Draws that hit a degenerate configuration are resampled this many times
/// before DegenerateDraw is raised.
inline constexpr int kScenarioRetries = 16;

struct ScenarioConfig {
  ScalarMode mode = ScalarMode::exact();
  std::int64_t coordinate_bound = 10;
  std::vector<std::uint64_t> seeds;
  bool fault = false;
};

template <Scalar T>
struct Witness {
  std::vector<std::pair<std::string, Point<T>>> points;
  std::vector<std::pair<std::string, Line<T>>> lines;
  std::vector<std::pair<std::string, Circle<T>>> circles;
  /// (point name, line or circle name) pairs that hold by construction.
  std::vector<std::pair<std::string, std::string>> incidences;
  std::string predicate;
  Residual<T> residual;
};

template <Scalar T>
struct ScenarioResult {
  ScenarioId id = ScenarioId::MiquelFirst;
  std::uint64_t seed = 0;
  bool fault = false;
  bool pass = false;
  int attempts = 0;
  Witness<T> witness;
};

/// Throws DegenerateDraw after kScenarioRetries resamples, InvalidArgument for
/// a coordinate bound below 2.
template <Scalar T>
ScenarioResult<T> run_scenario(ScenarioId id, std::uint64_t seed, const ScenarioConfig& config);

template <Scalar T>
std::vector<ScenarioResult<T>> run_scenarios(ScenarioId id, const ScenarioConfig& config);

/// Re-checks every construction incidence recorded in the witness. Returns
/// the ones that do not hold (empty when the construction stayed exact).
template <Scalar T>
std::vector<std::string> audit_witness(const Witness<T>& witness, const ScalarMode& mode);

/// Circle(C, E, F) evaluated at the second common point of circles ADF and
/// BDE. Zero whenever D, E, F lie on lines AB, BC, CA.
template <Scalar T>
Residual<T> pivot_residual(const Point<T>& a, const Point<T>& b, const Point<T>& c, const Point<T>& d,
                           const Point<T>& e, const Point<T>& f, const ScalarMode& mode = ScalarMode::exact());

}  // namespace miquel
