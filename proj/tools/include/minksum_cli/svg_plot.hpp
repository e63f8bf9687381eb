#pragma once

#include <string>
#include <vector>

#include "minksum/geometry.hpp"

namespace minksum::cli {

struct PlotOptions {
  bool inner = true;   // E_{A_sum}, blue
  bool john = true;    // best John candidate, red
  bool outer = false;  // minimum-volume outer ellipsoid, orange
  bool sum = true;     // boundary of the sum, green
  int points = 720;
};

/// Parses a comma-separated subset of inner,john,outer,sum.
PlotOptions parse_show(const std::string& list);

struct Curve {
  std::string label;
  std::string color;
  std::vector<Vector> points;
};

/// The curves that plot_svg draws, in drawing order: terms first.
std::vector<Curve> plot_curves(const EllipsoidSum& scene, const PlotOptions& opts);

/// Planar scenes only. The output depends on the scene and options alone.
std::string plot_svg(const EllipsoidSum& scene, const PlotOptions& opts);

}  // namespace minksum::cli
