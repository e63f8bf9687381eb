#include "minksum_cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "minksum/bounds.hpp"
#include "minksum_cli/scene_io.hpp"

namespace minksum::cli {
namespace {

Vector unit(double t) {
  Vector n(2);
  n << std::cos(t), std::sin(t);
  return n;
}

std::vector<Vector> ellipse_points(const SpdMatrix& a, int count) {
  std::vector<Vector> pts;
  for (int k = 0; k < count; ++k) {
    pts.push_back(a.matrix() * unit(2.0 * std::numbers::pi * k / count));
  }
  return pts;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000".
  return std::string(buf) == "-0.000000" ? "0.000000" : buf;
}

}  // namespace

PlotOptions parse_show(const std::string& list) {
  PlotOptions opts;
  opts.inner = opts.john = opts.outer = opts.sum = false;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inner") {
      opts.inner = true;
    } else if (item == "john") {
      opts.john = true;
    } else if (item == "outer") {
      opts.outer = true;
    } else if (item == "sum") {
      opts.sum = true;
    } else if (!item.empty()) {
      throw SchemaError("--show: unknown curve \"" + item + "\"");
    }
  }
  return opts;
}

std::vector<Curve> plot_curves(const EllipsoidSum& scene, const PlotOptions& opts) {
  if (scene.dim() != 2) throw ValidationError("plot: requires N = 2");
  std::vector<Curve> curves;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    curves.push_back({"E_" + std::to_string(i + 1), "black",
                      ellipse_points(scene[i].shape(), opts.points)});
  }
  if (opts.sum) {
    Curve c{"sum", "green", {}};
    for (int k = 0; k < opts.points; ++k) {
      c.points.push_back(sum_boundary_point(scene, unit(2.0 * std::numbers::pi * k / opts.points)));
    }
    curves.push_back(std::move(c));
  }
  // With a single term both inner ellipsoids coincide with it.
  if (scene.size() >= 2) {
    if (opts.inner) {
      curves.push_back({"inner_sum", "blue", ellipse_points(inner_sum_matrix(scene), opts.points)});
    }
    if (opts.john) {
      curves.push_back(
          {"inner_john", "red", ellipse_points(john_inner_recursive(scene), opts.points)});
    }
  }
  if (opts.outer) {
    curves.push_back(
        {"outer_optimal", "orange", ellipse_points(minvol_outer(scene).matrix, opts.points)});
  }
  return curves;
}

std::string plot_svg(const EllipsoidSum& scene, const PlotOptions& opts) {
  const std::vector<Curve> curves = plot_curves(scene, opts);
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      xmin = std::min(xmin, p(0));
      xmax = std::max(xmax, p(0));
      ymin = std::min(ymin, p(1));
      ymax = std::max(ymax, p(1));
    }
  }
  const double mx = 0.05 * (xmax - xmin);
  const double my = 0.05 * (ymax - ymin);
  xmin -= mx;
  xmax += mx;
  ymin -= my;
  ymax += my;
  const double width = xmax - xmin;
  const double height = ymax - ymin;
  const double stroke = 0.003 * std::max(width, height);

  std::ostringstream svg;
  // y is flipped so the picture has the usual orientation.
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(xmin) << ' ' << fmt(-ymax)
      << ' ' << fmt(width) << ' ' << fmt(height) << "\" width=\"800\" height=\""
      << fmt(800.0 * height / width) << "\">\n"
      << "<!-- minksum " << tool_version() << " -->\n"
      << "<rect x=\"" << fmt(xmin) << "\" y=\"" << fmt(-ymax) << "\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" fill=\"white\"/>\n";
  for (const auto& c : curves) {
    svg << "<polygon class=\"" << c.label << "\" fill=\"none\" stroke=\"" << c.color
        << "\" stroke-width=\"" << fmt(stroke) << "\" points=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      if (k) svg << ' ';
      svg << fmt(c.points[k](0)) << ',' << fmt(-c.points[k](1));
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace minksum::cli
