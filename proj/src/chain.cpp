#include "miquel/chain.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

#include "parallel.hpp"

namespace miquel {

Subset Subset::of(std::initializer_list<int> indices) {
  std::uint32_t bits = 0;
  for (int i : indices) {
    if (i < 0 || i >= kMaxChainLines) throw Error(ErrorCode::InvalidArgument, "line index out of range");
    bits |= 1u << i;
  }
  return Subset(bits);
}

std::vector<int> Subset::members() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::string Subset::label() const {
  std::string out;
  for (int i : members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1);
  }
  return out;
}

Subset Subset::parse_label(std::string_view text) {
  std::uint32_t bits = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, comma - pos);
    int value = 0;
    if (item.empty() || item.size() > 2) throw Error(ErrorCode::ParseError, "bad subset label '" + std::string(text) + "'");
    for (char c : item) {
      if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "bad subset label '" + std::string(text) + "'");
      value = value * 10 + (c - '0');
    }
    if (value < 1 || value > kMaxChainLines || (bits >> (value - 1) & 1u))
      throw Error(ErrorCode::ParseError, "bad subset label '" + std::string(text) + "'");
    bits |= 1u << (value - 1);
    pos = comma + 1;
  }
  return Subset(bits);
}

std::vector<Subset> enumerate_subsets(int n) {
  if (n < 2 || n > kMaxChainLines) throw Error(ErrorCode::InvalidArgument, "n must be in [2, 30]");
  std::vector<Subset> out;
  out.reserve(chain_object_count(n));
  // Gosper's hack walks the k-subsets of an n-set in increasing bitmask order.
  for (int k = 2; k <= n; ++k) {
    std::uint64_t s = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (s < limit) {
      out.emplace_back(static_cast<std::uint32_t>(s));
      const std::uint64_t low = s & (~s + 1);
      const std::uint64_t ripple = s + low;
      s = (((ripple ^ s) >> 2) / low) | ripple;
    }
  }
  return out;
}

std::uint64_t chain_object_count(int n) { return (std::uint64_t{1} << n) - 1 - static_cast<std::uint64_t>(n); }

std::string GeneralPositionReport::describe() const {
  std::ostringstream os;
  for (const auto& [i, j] : parallel_pairs) os << "parallel lines {" << i << "," << j << "}; ";
  for (const auto& [i, j, k] : concurrent_triples) os << "concurrent lines {" << i << "," << j << "," << k << "}; ";
  std::string s = os.str();
  if (s.size() >= 2) s.resize(s.size() - 2);
  return s;
}

GeneralPositionReport validate_general_position(const std::vector<Line<Rational>>& lines) {
  const int n = static_cast<int>(lines.size());
  GeneralPositionReport report;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (lines[i] == lines[j])
        throw Error(ErrorCode::DuplicateLine, "lines " + std::to_string(i) + " and " + std::to_string(j) +
                                                  " are both " + to_string(lines[i]));
      if (lines[i].a() * lines[j].b() == lines[j].a() * lines[i].b()) report.parallel_pairs.push_back({i, j});
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const auto& a = lines[i];
        const auto& b = lines[j];
        const auto& c = lines[k];
        // Three lines meet in a point iff their coefficient matrix is singular
        // (with no two parallel; a parallel pair is reported separately).
        const Rational det = a.a() * (b.b() * c.c() - b.c() * c.b()) - a.b() * (b.a() * c.c() - b.c() * c.a()) +
                             a.c() * (b.a() * c.b() - b.b() * c.a());
        const bool has_parallel = a.a() * b.b() == b.a() * a.b() || a.a() * c.b() == c.a() * a.b() ||
                                  b.a() * c.b() == c.a() * b.b();
        if (det.is_zero() && !has_parallel) report.concurrent_triples.push_back({i, j, k});
      }
  return report;
}

std::string Recipe::describe(Subset s) const {
  auto drop = [&](std::initializer_list<int> idx) {
    Subset t = s;
    for (int i : idx) t = t.without(i);
    return t.label();
  };
  switch (kind) {
    case RecipeKind::LineIntersection:
      return "R" + std::to_string(removed[0] + 1) + " x R" + std::to_string(removed[1] + 1);
    case RecipeKind::Circumcircle:
      return "circle P[" + drop({removed[0]}) + "] P[" + drop({removed[1]}) + "] P[" + drop({removed[2]}) + "]";
    case RecipeKind::SecondIntersection:
      return "C[" + drop({removed[0]}) + "] x C[" + drop({removed[1]}) + "] known P[" +
             drop({removed[0], removed[1]}) + "]";
  }
  return {};
}

Recipe canonical_recipe(Subset s) {
  const auto m = s.members();
  if (s.size() == 2) return {RecipeKind::LineIntersection, {m[0], m[1]}};
  if (s.size() % 2 == 1) return {RecipeKind::Circumcircle, {m[0], m[1], m[2]}};
  return {RecipeKind::SecondIntersection, {m[0], m[1]}};
}

BuildOptions BuildOptions::from_environment() {
  BuildOptions options;
  if (const char* env = std::getenv("CHAIN_MAX_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2 && v <= kMaxChainLines) options.max_lines = static_cast<int>(v);
  }
  return options;
}

template <Scalar T>
Chain<T>::Chain(std::vector<Line<T>> lines, const ScalarMode& mode)
    : lines_(std::move(lines)),
      mode_(mode),
      points_(std::size_t{1} << lines_.size()),
      circles_(std::size_t{1} << lines_.size()),
      recipes_(std::size_t{1} << lines_.size()),
      level_millis_(lines_.size() + 1, 0.0) {}

template <Scalar T>
Chain<T> Chain<T>::build(const std::vector<Line<Rational>>& lines, const ScalarMode& mode,
                         const BuildOptions& options) {
  const int n = static_cast<int>(lines.size());
  const int cap = std::min(options.max_lines, kMaxChainLines);
  if (n < 2 || n > cap)
    throw Error(ErrorCode::InvalidArgument,
                "chain needs between 2 and " + std::to_string(cap) + " lines, got " + std::to_string(n));
  const auto report = validate_general_position(lines);
  if (!report.valid()) throw Error(ErrorCode::GeneralPositionViolation, report.describe());

  std::vector<Line<T>> converted;
  converted.reserve(lines.size());
  for (const auto& l : lines) converted.push_back(line_from_rational<T>(l));
  Chain chain(std::move(converted), mode);

  const auto all = enumerate_subsets(n);
  auto begin = all.begin();
  for (int k = 2; k <= n; ++k) {
    const auto end = std::find_if(begin, all.end(), [k](Subset s) { return s.size() != k; });
    const std::vector<Subset> level(begin, end);
    begin = end;
    const auto start = std::chrono::steady_clock::now();
    detail::parallel_for(level.size(), options.threads, [&](std::size_t idx) {
      const Subset s = level[idx];
      Recipe recipe = canonical_recipe(s);
      const auto& r = recipe.removed;
      try {
        if (k == 2) {
          chain.points_[s.bits()] = intersect_lines(chain.lines_[r[0]], chain.lines_[r[1]]);
        } else if (k % 2 == 1) {
          chain.circles_[s.bits()] = circle_through(chain.point(s.without(r[0])), chain.point(s.without(r[1])),
                                                    chain.point(s.without(r[2])));
        } else {
          chain.points_[s.bits()] =
              second_intersection_circle_circle(chain.circle(s.without(r[0])), chain.circle(s.without(r[1])),
                                                chain.point(s.without(r[0]).without(r[1])), mode);
        }
      } catch (const Error& e) {
        throw Error(ErrorCode::ChainDegeneracy, "subset {" + s.label() + "}: " + e.what());
      }
      chain.recipes_[s.bits()] = std::move(recipe);
    });
    chain.level_millis_[k] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return chain;
}

template <Scalar T>
Chain<T> Chain<T>::assemble(std::vector<Line<T>> lines, const ScalarMode& mode,
                            const std::vector<std::pair<Subset, Point<T>>>& points,
                            const std::vector<std::pair<Subset, Circle<T>>>& circles) {
  const int n = static_cast<int>(lines.size());
  if (n < 2 || n > kMaxChainLines) throw Error(ErrorCode::InvalidArgument, "chain needs between 2 and 30 lines");
  Chain chain(std::move(lines), mode);
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (const auto& [s, p] : points) {
    if (s.bits() >= limit || !s.names_point() || chain.points_[s.bits()])
      throw Error(ErrorCode::InvalidArgument, "unexpected point subset {" + s.label() + "}");
    chain.points_[s.bits()] = p;
  }
  for (const auto& [s, c] : circles) {
    if (s.bits() >= limit || !s.names_circle() || chain.circles_[s.bits()])
      throw Error(ErrorCode::InvalidArgument, "unexpected circle subset {" + s.label() + "}");
    chain.circles_[s.bits()] = c;
  }
  for (Subset s : enumerate_subsets(n)) {
    const bool present = s.names_point() ? chain.points_[s.bits()].has_value() : chain.circles_[s.bits()].has_value();
    if (!present) throw Error(ErrorCode::InvalidArgument, "missing object for subset {" + s.label() + "}");
    chain.recipes_[s.bits()] = canonical_recipe(s);
  }
  return chain;
}

template <Scalar T>
const Point<T>& Chain<T>::point(Subset s) const {
  if (s.bits() >= points_.size() || !s.names_point() || !points_[s.bits()])
    throw Error(ErrorCode::InvalidArgument, "no point for subset {" + s.label() + "}");
  return *points_[s.bits()];
}

template <Scalar T>
const Circle<T>& Chain<T>::circle(Subset s) const {
  if (s.bits() >= circles_.size() || !s.names_circle() || !circles_[s.bits()])
    throw Error(ErrorCode::InvalidArgument, "no circle for subset {" + s.label() + "}");
  return *circles_[s.bits()];
}

template <Scalar T>
const Recipe& Chain<T>::recipe(Subset s) const {
  if (s.bits() >= recipes_.size() || s.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "no object for subset {" + s.label() + "}");
  return recipes_[s.bits()];
}

template <Scalar T>
std::size_t Chain<T>::point_count() const {
  return static_cast<std::size_t>(std::count_if(points_.begin(), points_.end(), [](const auto& p) { return p.has_value(); }));
}

template <Scalar T>
std::size_t Chain<T>::circle_count() const {
  return static_cast<std::size_t>(
      std::count_if(circles_.begin(), circles_.end(), [](const auto& c) { return c.has_value(); }));
}

template <Scalar T>
VerificationReport<T> verify_chain(const Chain<T>& chain, unsigned threads) {
  VerificationReport<T> report;
  report.points = chain.point_count();
  report.circles = chain.circle_count();
  for (Subset s : chain.subsets()) {
    if (s.size() < 4) continue;
    const auto m = s.members();
    const std::size_t forced = s.names_point() ? 2 : 3;
    for (std::size_t idx = 0; idx < m.size(); ++idx) {
      IncidenceCheck<T> check;
      check.circle = s.names_point() ? s.without(m[idx]) : s;
      check.point = s.names_point() ? s : s.without(m[idx]);
      check.guaranteed = idx < forced;
      report.checks.push_back(std::move(check));
    }
  }
  detail::parallel_for(report.checks.size(), threads, [&](std::size_t i) {
    auto& check = report.checks[i];
    check.residual = circle_residual(chain.circle(check.circle), chain.point(check.point));
    check.pass = check.residual.vanishes(chain.mode());
  });
  for (const auto& check : report.checks) {
    if (!check.guaranteed) ++report.substantive_checks;
    report.all_pass = report.all_pass && check.pass;
    report.max_normalized_residual = std::max(report.max_normalized_residual, check.residual.normalized());
  }
  return report;
}

namespace {

template <Scalar T>
void track_bits(LevelStats& level, const T& v) {
  if constexpr (std::same_as<T, Rational>) {
    level.max_numerator_bits = std::max(level.max_numerator_bits, v.numerator_bits());
    level.max_denominator_bits = std::max(level.max_denominator_bits, v.denominator_bits());
  }
}

}  // namespace

template <Scalar T>
ChainStats chain_stats(const Chain<T>& chain) {
  ChainStats stats;
  const int n = chain.line_count();
  for (int k = 2; k <= n; ++k) {
    LevelStats level;
    level.size = k;
    level.millis = chain.level_millis()[k];
    stats.levels.push_back(level);
  }
  std::map<std::string, Subset> seen_points;
  std::map<std::string, Subset> seen_circles;
  for (Subset s : chain.subsets()) {
    auto& level = stats.levels[s.size() - 2];
    ++level.objects;
    ++stats.total_objects;
    if (s.names_point()) {
      const auto& p = chain.point(s);
      track_bits(level, p.x);
      track_bits(level, p.y);
      auto [it, fresh] = seen_points.emplace(to_string(p), s);
      if (!fresh) stats.point_coincidences.emplace_back(it->second, s);
    } else {
      const auto& c = chain.circle(s);
      for (const auto& v : c.coefficients()) track_bits(level, v);
      auto [it, fresh] = seen_circles.emplace(to_string(c), s);
      if (!fresh) stats.circle_coincidences.emplace_back(it->second, s);
    }
  }
  return stats;
}

namespace {

template <Scalar T>
bool same_point(const Point<T>& a, const Point<T>& b, const ScalarMode& mode) {
  if constexpr (std::same_as<T, Rational>) {
    return a == b;
  } else {
    return is_zero(a.x - b.x, std::max(std::abs(a.x), std::abs(b.x)), mode) &&
           is_zero(a.y - b.y, std::max(std::abs(a.y), std::abs(b.y)), mode);
  }
}

template <Scalar T>
bool same_circle(const Circle<T>& a, const Circle<T>& b, const ScalarMode& mode) {
  if constexpr (std::same_as<T, Rational>) {
    return a == b;
  } else {
    const auto ca = a.coefficients();
    const auto cb = b.coefficients();
    for (std::size_t i = 0; i < ca.size(); ++i)
      if (!is_zero(ca[i] - cb[i], 1.0, mode)) return false;
    return true;
  }
}

}  // namespace

template <Scalar T>
RecipeAudit audit_recipes(const Chain<T>& chain) {
  RecipeAudit audit;
  const auto& mode = chain.mode();
  for (Subset s : chain.subsets()) {
    if (s.size() < 3) continue;
    const auto m = s.members();
    const auto n = m.size();
    auto attempt = [&](Recipe recipe, auto&& rebuild) {
      ++audit.recipes_checked;
      try {
        if (!rebuild()) audit.mismatches.push_back({s, recipe, "differs from stored object"});
      } catch (const Error& e) {
        audit.mismatches.push_back({s, recipe, e.what()});
      }
    };
    if (s.names_circle()) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          for (std::size_t c = b + 1; c < n; ++c)
            attempt({RecipeKind::Circumcircle, {m[a], m[b], m[c]}}, [&] {
              return same_circle(circle_through(chain.point(s.without(m[a])), chain.point(s.without(m[b])),
                                                chain.point(s.without(m[c]))),
                                 chain.circle(s), mode);
            });
    } else {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          attempt({RecipeKind::SecondIntersection, {m[a], m[b]}}, [&] {
            return same_point(second_intersection_circle_circle(chain.circle(s.without(m[a])),
                                                                chain.circle(s.without(m[b])),
                                                                chain.point(s.without(m[a]).without(m[b])), mode),
                              chain.point(s), mode);
          });
    }
  }
  return audit;
}

template class Chain<Rational>;
template class Chain<double>;
template VerificationReport<Rational> verify_chain(const Chain<Rational>&, unsigned);
template VerificationReport<double> verify_chain(const Chain<double>&, unsigned);
template ChainStats chain_stats(const Chain<Rational>&);
template ChainStats chain_stats(const Chain<double>&);
template RecipeAudit audit_recipes(const Chain<Rational>&);
template RecipeAudit audit_recipes(const Chain<double>&);

}  // namespace miquel
