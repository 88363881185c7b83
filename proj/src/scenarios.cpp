#include "miquel/scenarios.hpp"

#include <algorithm>
#include <map>

#include "miquel/chain.hpp"
#include "miquel/lines_io.hpp"
#include "miquel/random.hpp"

namespace miquel {

std::string_view scenario_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::MiquelFirst: return "miquel-first";
    case ScenarioId::FirstReciprocal: return "first-reciprocal";
    case ScenarioId::Pivot: return "pivot";
    case ScenarioId::FourLines: return "four-lines";
    case ScenarioId::Pentagon: return "pentagon";
    case ScenarioId::FourCircleLemma: return "four-circle-lemma";
    case ScenarioId::FourCircleLemmaCollinear: return "four-circle-lemma-collinear";
  }
  return "unknown";
}

std::optional<ScenarioId> parse_scenario_name(std::string_view name) {
  for (ScenarioId id : kAllScenarios)
    if (scenario_name(id) == name) return id;
  return std::nullopt;
}

namespace {

// Thrown inside a draw when the configuration is legal for the kernel but
// degenerate for the theorem (e.g. two named points coincide).
[[noreturn]] void degenerate(const std::string& why) { throw Error(ErrorCode::DegenerateDraw, why); }

template <Scalar T>
class Construction {
 public:
  Construction(SplitMix64& rng, std::int64_t bound, const ScalarMode& mode) : rng_(rng), bound_(bound), mode_(mode) {}

  Rational random_rational() { return rng_.rational(bound_); }

  Point<T> random_point() { return {from_rational<T>(random_rational()), from_rational<T>(random_rational())}; }

  /// Second intersection of c with a random rational-slope line through `anchor`.
  Point<T> random_point_on(const Circle<T>& c, const Point<T>& anchor) {
    const auto dx = rng_.uniform(-bound_, bound_);
    const auto dy = dx == 0 ? rng_.uniform(1, bound_) : rng_.uniform(-bound_, bound_);
    const Point<T> other{anchor.x + T(dx), anchor.y + T(dy)};
    return second_intersection_line_circle(line_from_points(anchor, other), c, anchor, mode_);
  }

  /// A nonzero random offset vector.
  Point<T> random_offset() {
    Rational ox, oy;
    do {
      ox = random_rational();
      oy = random_rational();
    } while (ox.is_zero() && oy.is_zero());
    return {from_rational<T>(ox), from_rational<T>(oy)};
  }

  const Point<T>& point(std::string name, Point<T> p) {
    witness.points.emplace_back(std::move(name), std::move(p));
    return witness.points.back().second;
  }
  const Line<T>& line(std::string name, Line<T> l) {
    witness.lines.emplace_back(std::move(name), std::move(l));
    return witness.lines.back().second;
  }
  const Circle<T>& circle(std::string name, Circle<T> c) {
    witness.circles.emplace_back(std::move(name), std::move(c));
    return witness.circles.back().second;
  }
  void on(const std::string& point, std::initializer_list<std::string> objects) {
    for (const auto& o : objects) witness.incidences.emplace_back(point, o);
  }

  const ScalarMode& mode() const { return mode_; }
  SplitMix64& rng() { return rng_; }

  Witness<T> witness;

 private:
  SplitMix64& rng_;
  std::int64_t bound_;
  const ScalarMode& mode_;
};

template <Scalar T>
void require_distinct(std::initializer_list<Point<T>> pts, const char* what) {
  const std::vector<Point<T>> v(pts);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) degenerate(std::string(what) + " has coinciding points");
}

// Circles A, C, D through a common point B; E on A; F = A.C, G = A.D;
// H = EF.C, I = EG.D, J = C.D. Conclusion: H, I, J collinear. The fault
// swaps D for a circle through G that misses B when constructing I.
template <Scalar T>
void miquel_first(Construction<T>& k, bool fault) {
  const auto B = k.point("B", k.random_point());
  const auto A = k.circle("A", circle_through(B, k.random_point(), k.random_point()));
  const auto E = k.point("E", k.random_point_on(A, B));
  const auto F = k.point("F", k.random_point_on(A, B));
  const auto G = k.point("G", k.random_point_on(A, B));
  require_distinct<T>({B, E, F, G}, "B, E, F, G");
  const auto C = k.circle("C", circle_through(B, F, k.random_point()));
  const auto D = k.circle("D", circle_through(B, G, k.random_point()));
  if (C == A || D == A || C == D) degenerate("circles A, C, D are not distinct");
  const auto J = k.point("J", second_intersection_circle_circle(C, D, B, k.mode()));
  const auto EF = k.line("EF", line_from_points(E, F));
  const auto EG = k.line("EG", line_from_points(E, G));
  const auto H = k.point("H", second_intersection_line_circle(EF, C, F, k.mode()));
  const auto Dused = fault ? k.circle("D'", circle_through(G, k.random_point(), k.random_point())) : D;
  if (fault && on_circle(Dused, B, ScalarMode::exact())) degenerate("replacement circle passes through B");
  const auto I = k.point("I", second_intersection_line_circle(EG, Dused, G, k.mode()));
  k.on("B", {"A", "C", "D"});
  k.on("E", {"A", "EF", "EG"});
  k.on("F", {"A", "C", "EF"});
  k.on("G", {"A", "D", "EG"});
  k.on("J", {"C", "D"});
  k.on("H", {"C", "EF"});
  k.on("I", {fault ? "D'" : "D", "EG"});
  k.witness.predicate = "collinear(H, I, J)";
  k.witness.residual = collinear_residual(H, I, J);
}

// Circles A, C, D through B; J = C.D; H on C; I = HJ.D; F = A.C, G = A.D.
// Conclusion: E = FH x GI lies on A. The fault draws H off circle C.
template <Scalar T>
void first_reciprocal(Construction<T>& k, bool fault) {
  const auto B = k.point("B", k.random_point());
  const auto A = k.circle("A", circle_through(B, k.random_point(), k.random_point()));
  const auto C = k.circle("C", circle_through(B, k.random_point(), k.random_point()));
  const auto D = k.circle("D", circle_through(B, k.random_point(), k.random_point()));
  if (C == A || D == A || C == D) degenerate("circles A, C, D are not distinct");
  const auto J = k.point("J", second_intersection_circle_circle(C, D, B, k.mode()));
  const auto F = k.point("F", second_intersection_circle_circle(A, C, B, k.mode()));
  const auto G = k.point("G", second_intersection_circle_circle(A, D, B, k.mode()));
  const auto H = k.point("H", fault ? k.random_point() : k.random_point_on(C, J));
  if (fault && on_circle(C, H, ScalarMode::exact())) degenerate("off-circle H landed on C");
  const auto HJ = k.line("HJ", line_from_points(H, J));
  const auto I = k.point("I", second_intersection_line_circle(HJ, D, J, k.mode()));
  const auto FH = k.line("FH", line_from_points(F, H));
  const auto GI = k.line("GI", line_from_points(G, I));
  const auto E = k.point("E", intersect_lines(FH, GI));
  k.on("B", {"A", "C", "D"});
  k.on("J", {"C", "D", "HJ"});
  k.on("F", {"A", "C", "FH"});
  k.on("G", {"A", "D", "GI"});
  if (!fault) k.on("H", {"C"});
  k.on("H", {"HJ", "FH"});
  k.on("I", {"D", "HJ", "GI"});
  k.on("E", {"FH", "GI"});
  k.witness.predicate = "on_circle(A, E)";
  k.witness.residual = circle_residual(A, E);
}

template <Scalar T>
Rational random_parameter(Construction<T>& k) {
  for (;;) {
    Rational t = k.random_rational();
    if (!t.is_zero() && t != Rational(1)) return t;
  }
}

template <Scalar T>
Point<T> along(const Point<T>& from, const Point<T>& to, const T& t) {
  return {from.x + t * (to.x - from.x), from.y + t * (to.y - from.y)};
}

// Triangle ABC with D, E, F on lines AB, BC, CA. Conclusion: circles ADF,
// BDE, CEF share a point G. The fault pushes E off line BC.
template <Scalar T>
void pivot(Construction<T>& k, bool fault) {
  const auto A = k.point("A", k.random_point());
  const auto B = k.point("B", k.random_point());
  const auto C = k.point("C", k.random_point());
  require_distinct<T>({A, B, C}, "triangle");
  if (collinear(A, B, C, ScalarMode::exact())) degenerate("triangle is flat");
  k.line("AB", line_from_points(A, B));
  const auto BC = k.line("BC", line_from_points(B, C));
  k.line("CA", line_from_points(C, A));
  const auto D = k.point("D", along(A, B, from_rational<T>(random_parameter(k))));
  auto e = along(B, C, from_rational<T>(random_parameter(k)));
  if (fault) {
    const auto off = k.random_offset();
    e = {e.x + off.x, e.y + off.y};
    if (on_line(BC, e, ScalarMode::exact())) degenerate("offset kept E on BC");
  }
  const auto E = k.point("E", e);
  const auto F = k.point("F", along(C, A, from_rational<T>(random_parameter(k))));
  require_distinct<T>({A, B, C, D, E, F}, "pivot configuration");
  const auto ADF = k.circle("ADF", circle_through(A, D, F));
  const auto BDE = k.circle("BDE", circle_through(B, D, E));
  const auto CEF = k.circle("CEF", circle_through(C, E, F));
  const auto G = k.point("G", second_intersection_circle_circle(ADF, BDE, D, k.mode()));
  k.on("D", {"AB", "ADF", "BDE"});
  if (!fault) k.on("E", {"BC"});
  k.on("E", {"BDE", "CEF"});
  k.on("F", {"CA", "ADF", "CEF"});
  k.on("G", {"ADF", "BDE"});
  k.witness.predicate = "on_circle(CEF, G)";
  k.witness.residual = circle_residual(CEF, G);
}

// Four circles C1..C4 with C1.C2 = {A, M}, C2.C3 = {B, N}, C3.C4 = {C, P},
// C4.C1 = {D, Q}. With A, B, C, D on a common circle (or line), M, N, P, Q
// are concyclic. The fault nudges D off that base.
template <Scalar T>
void four_circle_lemma(Construction<T>& k, bool collinear_base, bool fault) {
  std::array<Point<T>, 4> base;
  std::optional<Line<T>> base_line;
  std::optional<Circle<T>> base_circle;
  if (collinear_base) {
    const auto origin = k.random_point();
    const auto dir = k.random_offset();
    base_line = k.line("base", line_from_points(origin, Point<T>{origin.x + dir.x, origin.y + dir.y}));
    for (auto& p : base) {
      const T t = from_rational<T>(k.random_rational());
      p = {origin.x + t * dir.x, origin.y + t * dir.y};
    }
  } else {
    const auto anchor = k.random_point();
    base_circle = k.circle("base", circle_through(anchor, k.random_point(), k.random_point()));
    for (auto& p : base) p = k.random_point_on(*base_circle, anchor);
  }
  if (fault) {
    const auto off = k.random_offset();
    base[3] = {base[3].x + off.x, base[3].y + off.y};
    const bool still_on = base_line ? on_line(*base_line, base[3], ScalarMode::exact())
                                    : on_circle(*base_circle, base[3], ScalarMode::exact());
    if (still_on) degenerate("nudged D stayed on the base");
  }
  const auto A = k.point("A", base[0]);
  const auto B = k.point("B", base[1]);
  const auto C = k.point("C", base[2]);
  const auto D = k.point("D", base[3]);
  require_distinct<T>({A, B, C, D}, "base points");
  const auto C1 = k.circle("C1", circle_through(D, A, k.random_point()));
  const auto M = k.point("M", k.random_point_on(C1, A));
  const auto C2 = k.circle("C2", circle_through(A, M, B));
  const auto C3 = k.circle("C3", circle_through(B, C, k.random_point()));
  const auto N = k.point("N", second_intersection_circle_circle(C2, C3, B, k.mode()));
  const auto C4 = k.circle("C4", circle_through(C, D, k.random_point()));
  const auto P = k.point("P", second_intersection_circle_circle(C3, C4, C, k.mode()));
  const auto Q = k.point("Q", second_intersection_circle_circle(C4, C1, D, k.mode()));
  require_distinct<T>({M, N, P, Q}, "M, N, P, Q");
  if (!fault) {
    for (const char* name : {"A", "B", "C", "D"}) k.on(name, {"base"});
  } else {
    for (const char* name : {"A", "B", "C"}) k.on(name, {"base"});
  }
  k.on("A", {"C1", "C2"});
  k.on("B", {"C2", "C3"});
  k.on("C", {"C3", "C4"});
  k.on("D", {"C4", "C1"});
  k.on("M", {"C1", "C2"});
  k.on("N", {"C2", "C3"});
  k.on("P", {"C3", "C4"});
  k.on("Q", {"C4", "C1"});
  k.witness.predicate = "concyclic(M, N, P, Q)";
  k.witness.residual = concyclic_residual(M, N, P, Q);
}

// Build and verify the chain on n generated lines. The fault moves the first
// four-line Miquel point to another point of its first construction circle.
template <Scalar T>
void chain_scenario(Construction<T>& k, int n, std::uint64_t seed, std::int64_t bound, bool fault) {
  const auto lines = gen_lines(n, seed, bound);
  auto chain = Chain<T>::build(lines, k.mode());
  if (fault) {
    const Subset target = Subset::of({0, 1, 2, 3});
    const Subset host = target.without(0);
    std::vector<std::pair<Subset, Point<T>>> points;
    std::vector<std::pair<Subset, Circle<T>>> circles;
    for (Subset s : chain.subsets()) {
      if (s.names_point()) {
        points.emplace_back(s, s == target ? k.random_point_on(chain.circle(host), chain.point(host.without(1)))
                                           : chain.point(s));
      } else {
        circles.emplace_back(s, chain.circle(s));
      }
    }
    for (const auto& [s, p] : points)
      if (s == target && p == chain.point(target)) degenerate("moved point landed on the Miquel point");
    chain = Chain<T>::assemble(chain.lines(), k.mode(), points, circles);
  }
  for (int i = 0; i < n; ++i) k.line("R" + std::to_string(i + 1), chain.lines()[i]);
  for (Subset s : chain.subsets()) {
    const auto name = (s.names_point() ? "P" : "C") + s.label();
    if (s.names_point()) {
      k.point(name, chain.point(s));
    } else {
      k.circle(name, chain.circle(s));
    }
  }
  for (Subset s : chain.subsets()) {
    const auto& r = chain.recipe(s).removed;
    const auto label = s.label();
    if (s.size() == 2) {
      k.on("P" + label, {"R" + std::to_string(r[0] + 1), "R" + std::to_string(r[1] + 1)});
    } else if (s.names_circle()) {
      for (int i : r) k.on("P" + s.without(i).label(), {"C" + label});
    } else if (!(fault && s == Subset::of({0, 1, 2, 3}))) {
      k.on("P" + label, {"C" + s.without(r[0]).label(), "C" + s.without(r[1]).label()});
    }
  }
  const auto report = verify_chain(chain);
  // The witness residual is the worst check; its pass flag drives the result.
  const IncidenceCheck<T>* worst = nullptr;
  for (const auto& c : report.checks)
    if (!worst || (!c.pass && worst->pass) ||
        (c.pass == worst->pass && c.residual.normalized() > worst->residual.normalized()))
      worst = &c;
  k.witness.predicate = "verify_chain(n=" + std::to_string(n) + ")";
  if (worst) k.witness.residual = worst->residual;
}

}  // namespace

template <Scalar T>
ScenarioResult<T> run_scenario(ScenarioId id, std::uint64_t seed, const ScenarioConfig& config) {
  if (config.coordinate_bound < 2) throw Error(ErrorCode::InvalidArgument, "coordinate_bound must be >= 2");
  SplitMix64 rng(seed);
  std::string last_error;
  for (int attempt = 1; attempt <= kScenarioRetries + 1; ++attempt) {
    Construction<T> k(rng, config.coordinate_bound, config.mode);
    try {
      switch (id) {
        case ScenarioId::MiquelFirst: miquel_first(k, config.fault); break;
        case ScenarioId::FirstReciprocal: first_reciprocal(k, config.fault); break;
        case ScenarioId::Pivot: pivot(k, config.fault); break;
        case ScenarioId::FourCircleLemma: four_circle_lemma(k, false, config.fault); break;
        case ScenarioId::FourCircleLemmaCollinear: four_circle_lemma(k, true, config.fault); break;
        case ScenarioId::FourLines:
          chain_scenario(k, 4, rng.next(), config.coordinate_bound, config.fault);
          break;
        case ScenarioId::Pentagon:
          chain_scenario(k, 5, rng.next(), config.coordinate_bound, config.fault);
          break;
      }
    } catch (const Error& e) {
      last_error = e.what();
      continue;
    }
    ScenarioResult<T> result;
    result.id = id;
    result.seed = seed;
    result.fault = config.fault;
    result.attempts = attempt;
    result.pass = k.witness.residual.vanishes(config.mode);
    result.witness = std::move(k.witness);
    return result;
  }
  throw Error(ErrorCode::DegenerateDraw, std::string(scenario_name(id)) + " seed " + std::to_string(seed) +
                                             ": no usable draw after " + std::to_string(kScenarioRetries) +
                                             " resamples (last: " + last_error + ")");
}

template <Scalar T>
std::vector<ScenarioResult<T>> run_scenarios(ScenarioId id, const ScenarioConfig& config) {
  std::vector<ScenarioResult<T>> out;
  out.reserve(config.seeds.size());
  for (auto seed : config.seeds) out.push_back(run_scenario<T>(id, seed, config));
  return out;
}

template <Scalar T>
std::vector<std::string> audit_witness(const Witness<T>& witness, const ScalarMode& mode) {
  std::map<std::string, const Point<T>*> points;
  std::map<std::string, const Line<T>*> lines;
  std::map<std::string, const Circle<T>*> circles;
  for (const auto& [name, p] : witness.points) points[name] = &p;
  for (const auto& [name, l] : witness.lines) lines[name] = &l;
  for (const auto& [name, c] : witness.circles) circles[name] = &c;
  std::vector<std::string> failures;
  for (const auto& [pname, oname] : witness.incidences) {
    const auto p = points.find(pname);
    if (p == points.end()) {
      failures.push_back("unknown point " + pname);
      continue;
    }
    bool holds = false;
    if (const auto l = lines.find(oname); l != lines.end()) {
      holds = on_line(*l->second, *p->second, mode);
    } else if (const auto c = circles.find(oname); c != circles.end()) {
      holds = on_circle(*c->second, *p->second, mode);
    } else {
      failures.push_back("unknown object " + oname);
      continue;
    }
    if (!holds) failures.push_back(pname + " not on " + oname);
  }
  return failures;
}

template <Scalar T>
Residual<T> pivot_residual(const Point<T>& a, const Point<T>& b, const Point<T>& c, const Point<T>& d,
                           const Point<T>& e, const Point<T>& f, const ScalarMode& mode) {
  const auto g = second_intersection_circle_circle(circle_through(a, d, f), circle_through(b, d, e), d, mode);
  return circle_residual(circle_through(c, e, f), g);
}

#define MIQUEL_INSTANTIATE(T)                                                                                    \
  template ScenarioResult<T> run_scenario(ScenarioId, std::uint64_t, const ScenarioConfig&);                    \
  template std::vector<ScenarioResult<T>> run_scenarios(ScenarioId, const ScenarioConfig&);                     \
  template std::vector<std::string> audit_witness(const Witness<T>&, const ScalarMode&);                       \
  template Residual<T> pivot_residual(const Point<T>&, const Point<T>&, const Point<T>&, const Point<T>&,       \
                                      const Point<T>&, const Point<T>&, const ScalarMode&);

MIQUEL_INSTANTIATE(Rational)
MIQUEL_INSTANTIATE(double)

#undef MIQUEL_INSTANTIATE

}  // namespace miquel
