#pragma once

#include <stdexcept>
#include <string>

#include "minksum/geometry.hpp"

namespace minksum::cli {

/// Malformed JSON or a document that does not follow the scene schema.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SceneFile {
  std::string path;
  EllipsoidSum scene;
  std::string tool_version;
};

/// {"dimension": N, "ellipsoids": [{"matrix": [[...], ...]} | {"shape": [[...], ...]}, ...]}
/// An optional top-level "name" string is allowed. Terms with a "center" are
/// rejected: every ellipsoid is origin-centered.
EllipsoidSum parse_scene(const std::string& text);
SceneFile load_scene(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

const char* tool_version();

}  // namespace minksum::cli
