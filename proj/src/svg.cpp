#include "miquel/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace miquel {

bool RenderSpec::draws(int size) const {
  return sizes.empty() || std::find(sizes.begin(), sizes.end(), size) != sizes.end();
}

namespace {

struct Box {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(double x, double y) {
    min_x = std::min(min_x, x);
    min_y = std::min(min_y, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }
  bool empty() const { return !(min_x <= max_x); }
};

// Liang-Barsky clip of the line a*x + b*y + c = 0 against the box.
std::optional<std::array<double, 4>> clip(double a, double b, double c, const Box& box) {
  const double norm = a * a + b * b;
  const double px = -a * c / norm;
  const double py = -b * c / norm;
  const double dx = b;
  const double dy = -a;
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  auto edge = [&](double p, double q) {
    if (p == 0) return q >= 0;
    const double t = q / p;
    if (p < 0) t0 = std::max(t0, t);
    else t1 = std::min(t1, t);
    return true;
  };
  if (!edge(-dx, px - box.min_x) || !edge(dx, box.max_x - px) || !edge(-dy, py - box.min_y) ||
      !edge(dy, box.max_y - py) || t0 > t1)
    return std::nullopt;
  return std::array<double, 4>{px + t0 * dx, py + t0 * dy, px + t1 * dx, py + t1 * dy};
}

const char* level_color(int size) {
  static constexpr std::array<const char*, 8> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                         "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return palette[static_cast<std::size_t>(size) % palette.size()];
}

}  // namespace

template <Scalar T>
std::string render_svg(const Chain<T>& chain, const RenderSpec& spec) {
  const auto subsets = chain.subsets();

  // The pairwise intersections always frame the view so that drawn lines
  // have something to be clipped against.
  Box box;
  for (Subset s : subsets) {
    if (s.names_point() && (s.size() == 2 || spec.draws(s.size()))) {
      const auto& p = chain.point(s);
      box.add(to_double(p.x), to_double(p.y));
    } else if (s.names_circle() && spec.draws(s.size())) {
      const auto& c = chain.circle(s);
      const auto center = c.center();
      const double r = std::sqrt(to_double(c.squared_radius()));
      box.add(to_double(center.x) - r, to_double(center.y) - r);
      box.add(to_double(center.x) + r, to_double(center.y) + r);
    }
  }
  if (box.empty()) box.add(0, 0);
  const double extent = std::max({box.max_x - box.min_x, box.max_y - box.min_y, 1e-9});
  const double inner = spec.canvas * (1.0 - 2.0 * spec.margin);
  const double scale = inner / extent;
  const double pad = spec.canvas * spec.margin;
  // rounded to the printed precision so -0.000000 never appears
  auto tidy = [](double v) { return std::round(v * 1e6) / 1e6 + 0.0; };
  auto sx = [&](double x) { return tidy(pad + (x - box.min_x) * scale); };
  auto sy = [&](double y) { return tidy(pad + (box.max_y - y) * scale); };

  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.canvas << "\" height=\""
     << spec.canvas << "\" viewBox=\"0 0 " << spec.canvas << " " << spec.canvas << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (spec.draws(1)) {
    // Clip slightly beyond the framed region so lines reach the border.
    Box view = box;
    view.min_x -= pad / scale;
    view.max_x += pad / scale;
    view.min_y -= pad / scale;
    view.max_y += pad / scale;
    os << "<g stroke=\"#444\" stroke-width=\"" << spec.stroke_width << "\">\n";
    for (int i = 0; i < chain.line_count(); ++i) {
      const auto& l = chain.lines()[i];
      const auto seg = clip(to_double(l.a()), to_double(l.b()), to_double(l.c()), view);
      if (!seg) continue;
      os << "  <line class=\"line\" data-index=\"" << i + 1 << "\" x1=\"" << sx((*seg)[0]) << "\" y1=\""
         << sy((*seg)[1]) << "\" x2=\"" << sx((*seg)[2]) << "\" y2=\"" << sy((*seg)[3]) << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g fill=\"none\" stroke-width=\"" << spec.stroke_width << "\">\n";
  for (Subset s : subsets) {
    if (!s.names_circle() || !spec.draws(s.size())) continue;
    const auto& c = chain.circle(s);
    const auto center = c.center();
    const double r = std::sqrt(to_double(c.squared_radius()));
    os << "  <circle class=\"chain-circle\" data-subset=\"" << s.label() << "\" cx=\"" << sx(to_double(center.x))
       << "\" cy=\"" << sy(to_double(center.y)) << "\" r=\"" << r * scale << "\" stroke=\"" << level_color(s.size())
       << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (Subset s : subsets) {
    if (!s.names_point() || !spec.draws(s.size())) continue;
    const auto& p = chain.point(s);
    const double x = sx(to_double(p.x));
    const double y = sy(to_double(p.y));
    os << "  <g class=\"chain-point\" data-subset=\"" << s.label() << "\">"
       << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << level_color(s.size()) << "\"/>"
       << "<text x=\"" << x + 4 << "\" y=\"" << y - 4 << "\">P" << s.label() << "</text></g>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

template std::string render_svg(const Chain<Rational>&, const RenderSpec&);
template std::string render_svg(const Chain<double>&, const RenderSpec&);

}  // namespace miquel
