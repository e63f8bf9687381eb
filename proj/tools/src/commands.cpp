#include "minksum_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "minksum/bounds.hpp"
#include "minksum/curvature.hpp"
#include "minksum/oracle.hpp"
#include "minksum/steiner.hpp"
#include "minksum/surface_integrals.hpp"
#include "minksum_cli/scene_io.hpp"
#include "minksum_cli/svg_plot.hpp"

namespace minksum::cli {
namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlotDimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string scene_path;
  std::string out_path;
};

void emit(const CommonArgs& args, const std::string& text, std::ostream& out) {
  if (args.out_path.empty()) {
    out << text;
  } else {
    write_file(args.out_path, text);
  }
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

ordered_json provenance(const SceneFile& file) {
  return {{"tool_version", file.tool_version}, {"scene", file.path}};
}

SphereQuadrature quadrature_for(int dim, int resolution) {
  return build_quadrature(dim, resolution > 0 ? resolution : default_resolution(dim));
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------

std::string cmd_boundary(const SceneFile& file, int samples) {
  const EllipsoidSum& scene = file.scene;
  const int dim = scene.dim();
  if (samples < 1) throw UsageError("--samples must be positive");

  Matrix normals;
  if (dim == 2) {
    normals.resize(2, samples);
    for (int k = 0; k < samples; ++k) {
      const double t = 2.0 * std::numbers::pi * k / samples;
      normals(0, k) = std::cos(t);
      normals(1, k) = std::sin(t);
    }
  } else {
    const int res = std::max(
        4, static_cast<int>(std::ceil(std::pow(static_cast<double>(samples), 1.0 / (dim - 1)) - 1e-9)));
    normals = build_quadrature(dim, res).nodes;
  }

  std::ostringstream csv;
  for (int i = 1; i <= dim; ++i) csv << (i > 1 ? "," : "") << "n_" << i;
  for (int i = 1; i <= dim; ++i) csv << ",x_" << i;
  for (int i = 1; i < dim; ++i) csv << ",kappa_" << i;
  csv << '\n';
  for (Eigen::Index k = 0; k < normals.cols(); ++k) {
    const Vector n = normals.col(k);
    const Vector x = sum_boundary_point(scene, n);
    const Vector kappa = principal_curvatures(scene, n);
    for (int i = 0; i < dim; ++i) csv << (i ? "," : "") << format_g17(n(i));
    for (int i = 0; i < dim; ++i) csv << ',' << format_g17(x(i));
    for (Eigen::Index i = 0; i < kappa.size(); ++i) csv << ',' << format_g17(kappa(i));
    csv << '\n';
  }
  return csv.str();
}

ordered_json mc_json(const McEstimate& mc) {
  return {{"value", mc.value},
          {"std_error", mc.std_error},
          {"samples", mc.samples},
          {"seed", mc.seed},
          {"boundary_count", mc.boundary_count}};
}

std::string cmd_volume(const SceneFile& file, const std::string& method, int resolution,
                       std::uint64_t samples, std::optional<std::uint64_t> seed, int threads) {
  const EllipsoidSum& scene = file.scene;
  const int dim = scene.dim();
  ordered_json report;
  report["method"] = method;
  report["dimension"] = dim;
  report["terms"] = scene.size();

  if (method == "divergence") {
    const SphereQuadrature quad = quadrature_for(dim, resolution);
    const double value = volume_divergence(scene, quad);
    // Difference to the half-resolution rule as an error estimate.
    const double coarse = volume_divergence(scene, build_quadrature(dim, std::max(4, quad.resolution / 2)));
    report["resolution"] = quad.resolution;
    report["value"] = value;
    report["error_estimate"] = std::abs(value - coarse);
  } else if (method == "steiner") {
    if (dim == 2) {
      const SteinerReport r = area_sum_2d_report(scene);
      report["value"] = *r.exact_value;
      report["error_estimate"] = 0.0;
    } else if (dim == 3) {
      const SphereQuadrature quad = quadrature_for(dim, resolution);
      report["resolution"] = quad.resolution;
      if (scene.size() == 1) {
        report["value"] = unit_ball_volume(3) * scene[0].shape().determinant();
        report["error_estimate"] = 0.0;
      } else if (scene.size() == 2) {
        report["value"] = volume_sum_3d_pair(scene[0].shape(), scene[1].shape(), quad);
      } else {
        const SteinerReport r = volume_sum_3d_bounds(scene, quad);
        report["value"] = *r.exact_value;
        report["lower"] = r.lower;
        report["upper"] = r.upper;
        report["relative_width"] = (r.upper - r.lower) / *r.exact_value;
        ordered_json comps = ordered_json::array();
        for (const auto& c : r.components) {
          comps.push_back({{"step", c.step},
                           {"area", c.area},
                           {"area_lower", c.area_lower},
                           {"area_upper", c.area_upper},
                           {"mean_curvature_integral", c.boundary_term}});
        }
        report["components"] = comps;
      }
    } else {
      throw UsageError("--method steiner supports N = 2 and N = 3 only");
    }
  } else {
    if (!seed) throw UsageError("--method montecarlo requires --seed");
    const McEstimate mc = monte_carlo_volume(scene, samples, *seed, threads);
    report["value"] = mc.value;
    report["error_estimate"] = mc.std_error;
    report["montecarlo"] = mc_json(mc);
  }
  report["provenance"] = provenance(file);
  return report.dump(2) + "\n";
}

std::string cmd_bounds(const SceneFile& file, int resolution) {
  const EllipsoidSum& scene = file.scene;
  const BoundReport r = volume_bounds(scene, quadrature_for(scene.dim(), resolution));
  ordered_json report;
  report["inner_sum_det"] = r.inner_sum.determinant();
  report["inner_john_det"] = r.inner_john.determinant();
  report["outer_optimal_det"] = r.outer_optimal.determinant();
  report["outer_heuristic_det"] = r.outer_heuristic.determinant();
  report["lower_volume"] = r.lower_volume;
  report["upper_volume"] = r.upper_volume;
  report["bm_chain"] = r.bm_chain;
  report["divergence_volume"] = r.divergence_volume;
  report["inner_john_candidate"] = r.inner_john_label;
  report["unit_ball_volume"] = unit_ball_volume(scene.dim());
  report["inner_john_matrix"] = matrix_json(r.inner_john.matrix());
  report["outer_optimal_matrix"] = matrix_json(r.outer_optimal.matrix());
  report["provenance"] = provenance(file);
  return report.dump(2) + "\n";
}

std::string cmd_oracle(const SceneFile& file, std::uint64_t samples,
                       std::optional<std::uint64_t> seed, int resolution, int polyline, int threads) {
  if (!seed) throw UsageError("oracle requires --seed");
  const EllipsoidSum& scene = file.scene;
  const SphereQuadrature quad = quadrature_for(scene.dim(), resolution);
  const McEstimate mc = monte_carlo_volume(scene, samples, *seed, threads);
  const double divergence = volume_divergence(scene, quad);
  ordered_json report;
  report["montecarlo"] = mc_json(mc);
  report["divergence_volume"] = divergence;
  report["deviation_in_std_errors"] =
      mc.std_error > 0.0 ? (mc.value - divergence) / mc.std_error : 0.0;
  if (scene.dim() == 2) {
    report["polyline_perimeter"] = polyline_perimeter(scene, polyline);
    report["quadrature_perimeter"] = surface_area(scene, quad);
    report["steiner_area"] = area_sum_2d_recursive(scene);
  }
  report["provenance"] = provenance(file);
  return report.dump(2) + "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minkowski sums of origin-centered ellipsoids", "minksum"};
  app.set_version_flag("--version", std::string("minksum ") + tool_version());
  app.require_subcommand(1);

  CommonArgs common;
  int resolution = 0;
  int samples_boundary = 360;
  std::uint64_t samples_mc = 1000000;
  std::uint64_t seed_value = 0;
  int threads = 1;
  int polyline = 10000;
  std::string method = "divergence";
  std::string show = "inner,john,sum";

  auto add_scene = [&](CLI::App* sub) {
    sub->add_option("scene", common.scene_path, "Scene JSON file")->required();
    sub->add_option("-o,--out", common.out_path, "Output file (stdout when omitted)");
  };

  CLI::App* boundary = app.add_subcommand("boundary", "Sample the sum boundary as CSV");
  add_scene(boundary);
  boundary->add_option("-K,--samples", samples_boundary, "Number of normals")
      ->check(CLI::PositiveNumber);

  CLI::App* volume = app.add_subcommand("volume", "Volume of the sum as JSON");
  add_scene(volume);
  volume->add_option("--method", method)
      ->check(CLI::IsMember({"divergence", "steiner", "montecarlo"}));
  volume->add_option("--resolution", resolution, "Quadrature resolution");
  volume->add_option("--samples", samples_mc, "Monte Carlo samples");
  CLI::Option* vol_seed = volume->add_option("--seed", seed_value, "Monte Carlo seed");
  volume->add_option("--threads", threads)->check(CLI::PositiveNumber);

  CLI::App* bounds = app.add_subcommand("bounds", "Inner/outer ellipsoid bounds as JSON");
  add_scene(bounds);
  bounds->add_option("--resolution", resolution, "Quadrature resolution");

  CLI::App* plot = app.add_subcommand("plot", "SVG figure of a planar scene");
  add_scene(plot);
  plot->add_option("--show", show, "Comma-separated subset of inner,john,outer,sum");

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force cross-checks as JSON");
  add_scene(oracle);
  oracle->add_option("--samples", samples_mc, "Monte Carlo samples");
  CLI::Option* ora_seed = oracle->add_option("--seed", seed_value, "Monte Carlo seed");
  oracle->add_option("--resolution", resolution, "Quadrature resolution");
  oracle->add_option("--polyline", polyline, "Polyline vertices for the perimeter check");
  oracle->add_option("--threads", threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (resolution != 0 && resolution < 4) throw UsageError("--resolution must be at least 4");
    const SceneFile file = load_scene(common.scene_path);
    if (!file.scene.reliable()) {
      err << "warning: a term has condition number above " << kConditionWarning
          << "; results may be unreliable\n";
    }
    std::string text;
    if (boundary->parsed()) {
      text = cmd_boundary(file, samples_boundary);
    } else if (volume->parsed()) {
      std::optional<std::uint64_t> seed;
      if (vol_seed->count()) seed = seed_value;
      text = cmd_volume(file, method, resolution, samples_mc, seed, threads);
    } else if (bounds->parsed()) {
      text = cmd_bounds(file, resolution);
    } else if (plot->parsed()) {
      if (file.scene.dim() != 2) {
        throw PlotDimensionError("plot requires a planar scene, got N = " +
                                 std::to_string(file.scene.dim()));
      }
      text = plot_svg(file.scene, parse_show(show));
    } else {
      std::optional<std::uint64_t> seed;
      if (ora_seed->count()) seed = seed_value;
      text = cmd_oracle(file, samples_mc, seed, resolution, polyline, threads);
    }
    emit(common, text, out);
    return kExitOk;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const PlotDimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPlotDimension;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace minksum::cli
