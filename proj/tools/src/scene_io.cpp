#include "minksum_cli/scene_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace minksum::cli {
namespace {

using nlohmann::json;

Matrix parse_matrix(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw SchemaError(where + ": expected " + std::to_string(dim) + " rows");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw SchemaError(where + ": row " + std::to_string(r) + " must hold " +
                        std::to_string(dim) + " numbers");
    }
    for (int c = 0; c < dim; ++c) {
      const json& v = row[static_cast<size_t>(c)];
      if (!v.is_number()) throw SchemaError(where + ": entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

}  // namespace

const char* tool_version() { return MINKSUM_VERSION; }

EllipsoidSum parse_scene(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("scene must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "dimension" && key != "ellipsoids" && key != "name") {
      throw SchemaError("unknown scene key \"" + key + "\"");
    }
  }
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer()) {
    throw SchemaError("\"dimension\" must be an integer");
  }
  const int dim = doc["dimension"].get<int>();
  if (dim < 2) throw SchemaError("\"dimension\" must be at least 2");
  if (!doc.contains("ellipsoids") || !doc["ellipsoids"].is_array() || doc["ellipsoids"].empty()) {
    throw SchemaError("\"ellipsoids\" must be a non-empty array");
  }

  std::vector<Ellipsoid> terms;
  const json& list = doc["ellipsoids"];
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string where = "ellipsoids[" + std::to_string(i) + "]";
    const json& term = list[i];
    if (!term.is_object()) throw SchemaError(where + ": must be an object");
    if (term.contains("center")) {
      throw SchemaError(where + ": \"center\" is not supported, ellipsoids are origin-centered");
    }
    for (const auto& [key, value] : term.items()) {
      if (key != "matrix" && key != "shape") {
        throw SchemaError(where + ": unknown key \"" + key + "\"");
      }
    }
    if (term.contains("matrix") == term.contains("shape")) {
      throw SchemaError(where + ": exactly one of \"matrix\" or \"shape\" is required");
    }
    try {
      if (term.contains("matrix")) {
        terms.emplace_back(SpdMatrix(parse_matrix(term["matrix"], dim, where + ".matrix")));
      } else {
        terms.push_back(ellipsoid_from_general(parse_matrix(term["shape"], dim, where + ".shape")));
      }
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return EllipsoidSum(std::move(terms));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

SceneFile load_scene(const std::string& path) {
  return SceneFile{path, parse_scene(read_file(path)), tool_version()};
}

}  // namespace minksum::cli
