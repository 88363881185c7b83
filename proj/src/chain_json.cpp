#include "miquel/chain_json.hpp"

#include <json.hpp>

namespace miquel {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormat = "miquel-chain/1";

Json scalar_json(const Rational& v) { return v.str(); }
Json scalar_json(double v) { return v; }

template <Scalar T, std::size_t N>
Json tuple_json(const std::array<T, N>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(scalar_json(v));
  return out;
}

template <Scalar T>
T scalar_from(const Json& j) {
  if constexpr (std::same_as<T, Rational>) {
    if (!j.is_string()) throw Error(ErrorCode::ParseError, "exact scalar must be a \"p/q\" string");
    return Rational::parse(j.get<std::string>());
  } else {
    if (!j.is_number()) throw Error(ErrorCode::ParseError, "float scalar must be a number");
    return j.get<double>();
  }
}

template <Scalar T, std::size_t N>
std::array<T, N> tuple_from(const Json& j) {
  if (!j.is_array() || j.size() != N)
    throw Error(ErrorCode::ParseError, "expected an array of " + std::to_string(N) + " scalars");
  std::array<T, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = scalar_from<T>(j[i]);
  return out;
}

Json stats_json(const ChainStats& stats) {
  Json levels = Json::array();
  for (const auto& l : stats.levels) {
    levels.push_back({{"size", l.size},
                      {"objects", l.objects},
                      {"max_numerator_bits", l.max_numerator_bits},
                      {"max_denominator_bits", l.max_denominator_bits}});
  }
  auto pairs = [](const std::vector<std::pair<Subset, Subset>>& v) {
    Json out = Json::array();
    for (const auto& [a, b] : v) out.push_back({a.label(), b.label()});
    return out;
  };
  return {{"total_objects", stats.total_objects},
          {"levels", levels},
          {"point_coincidences", pairs(stats.point_coincidences)},
          {"circle_coincidences", pairs(stats.circle_coincidences)}};
}

template <Scalar T>
Json report_json(const VerificationReport<T>& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"circle", c.circle.label()},
                      {"point", c.point.label()},
                      {"guaranteed", c.guaranteed},
                      {"residual", scalar_json(c.residual.value)},
                      {"normalized_residual", c.residual.normalized()},
                      {"pass", c.pass}});
  }
  return {{"all_pass", report.all_pass},
          {"counts",
           {{"points", report.points},
            {"circles", report.circles},
            {"checks", report.checks.size()},
            {"substantive_checks", report.substantive_checks}}},
          {"max_normalized_residual", report.max_normalized_residual},
          {"checks", checks}};
}

template <Scalar T>
AnyChain chain_from(const Json& doc, const ScalarMode& mode) {
  std::vector<Line<T>> lines;
  for (const auto& l : doc.at("lines")) {
    const auto c = tuple_from<T, 3>(l);
    lines.push_back(Line<T>::from_coefficients(c[0], c[1], c[2]));
  }
  std::vector<std::pair<Subset, Point<T>>> points;
  for (const auto& [key, value] : doc.at("points").items()) {
    const auto c = tuple_from<T, 2>(value);
    points.emplace_back(Subset::parse_label(key), Point<T>{c[0], c[1]});
  }
  std::vector<std::pair<Subset, Circle<T>>> circles;
  for (const auto& [key, value] : doc.at("circles").items()) {
    const auto c = tuple_from<T, 4>(value);
    circles.emplace_back(Subset::parse_label(key), Circle<T>::from_coefficients(c[0], c[1], c[2], c[3]));
  }
  return Chain<T>::assemble(std::move(lines), mode, points, circles);
}

// dump(2) puts every array element on its own line; fold arrays that hold
// only scalars back onto one line so each tuple reads as ["p/q", "r/s"].
std::string fold_scalar_arrays(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '"') {
      const auto end = text.find('"', i + 1);  // no escapes occur in our keys/values
      out.append(text, i, end - i + 1);
      i = end;
      continue;
    }
    if (text[i] != '[') {
      out += text[i];
      continue;
    }
    std::size_t j = i + 1;
    bool in_string = false;
    bool nested = false;
    for (; j < text.size(); ++j) {
      const char c = text[j];
      if (c == '"') in_string = !in_string;
      if (in_string) continue;
      if (c == '[' || c == '{') nested = true;
      if (c == ']' || nested) break;
    }
    if (nested || j >= text.size()) {
      out += '[';
      continue;
    }
    out += '[';
    in_string = false;
    for (std::size_t k = i + 1; k < j; ++k) {
      const char c = text[k];
      if (c == '"') in_string = !in_string;
      if (!in_string && (c == '\n' || c == ' ')) continue;
      out += c;
      if (!in_string && c == ',') out += ' ';
    }
    out += ']';
    i = j;
  }
  return out;
}

}  // namespace

template <Scalar T>
std::string emit_chain_json(const Chain<T>& chain, const VerificationReport<T>* report) {
  Json doc;
  doc["format"] = kFormat;
  doc["n"] = chain.line_count();
  doc["mode"] = std::string(chain.mode().name());
  if (!chain.mode().is_exact()) doc["epsilon"] = chain.mode().epsilon();
  Json lines = Json::array();
  for (const auto& l : chain.lines()) lines.push_back(tuple_json(l.coefficients()));
  doc["lines"] = lines;
  Json points = Json::object();
  Json circles = Json::object();
  Json provenance = Json::object();
  for (Subset s : chain.subsets()) {
    if (s.names_point()) {
      const auto& p = chain.point(s);
      points[s.label()] = Json::array({scalar_json(p.x), scalar_json(p.y)});
    } else {
      circles[s.label()] = tuple_json(chain.circle(s).coefficients());
    }
    provenance[s.label()] = chain.recipe(s).describe(s);
  }
  doc["points"] = points;
  doc["circles"] = circles;
  doc["provenance"] = provenance;
  doc["stats"] = stats_json(chain_stats(chain));
  if (report) doc["verification"] = report_json(*report);
  return fold_scalar_arrays(doc.dump(2)) + "\n";
}

AnyChain parse_chain_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != kFormat)
      throw Error(ErrorCode::ParseError, std::string("not a ") + kFormat + " document");
    const auto mode_name = doc.at("mode").get<std::string>();
    if (mode_name == "exact") return chain_from<Rational>(doc, ScalarMode::exact());
    if (mode_name == "float")
      return chain_from<double>(doc, ScalarMode::floating({doc.at("epsilon").get<double>()}));
    throw Error(ErrorCode::ParseError, "unknown mode '" + mode_name + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed chain document: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

template std::string emit_chain_json(const Chain<Rational>&, const VerificationReport<Rational>*);
template std::string emit_chain_json(const Chain<double>&, const VerificationReport<double>*);

}  // namespace miquel
