#pragma once

#include <string>
#include <vector>

#include "miquel/chain.hpp"

namespace miquel {

struct RenderSpec {
  /// Subset sizes to draw (1 = the input lines). Empty draws everything.
  std::vector<int> sizes;
  double stroke_width = 1.5;
  /// Blank border around the drawing, as a fraction of the canvas.
  double margin = 0.05;
  int canvas = 900;

  bool draws(int size) const;
};

/// SVG 1.1 drawing of a chain. Lines are clipped to the viewport, circles are
/// <circle class="chain-circle">, points are <g class="chain-point"> groups
/// holding a dot and a subset label. Coordinates are converted to double for
/// display only.
template <Scalar T>
std::string render_svg(const Chain<T>& chain, const RenderSpec& spec = {});

}  // namespace miquel
