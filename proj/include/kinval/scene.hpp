#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kinval/coef_forms.hpp"
#include "kinval/geometry.hpp"
#include "kinval/kinematic.hpp"
#include "kinval/quadrature.hpp"

namespace kinval {

struct FormSpec {
  std::string name;
  std::vector<double> params;
  ValuationPair resolve() const { return make_valuation(name, params); }
};

/// Names of the scene entries a kinematic run or check operates on.
struct KinematicSpec {
  std::string a;
  std::string x;
  std::string family;
  std::string valuation;
  std::optional<std::string> measure;  // curvature measure Φ for product checks
  std::optional<std::string> e;        // localizing region
};

struct Scene {
  std::uint64_t seed = 0;
  std::map<std::string, Shape> shapes;
  std::map<std::string, FormSpec> forms;
  std::map<std::string, MotionFamily> families;
  QuadratureOptions quadrature;
  std::optional<KinematicSpec> kinematic;
  std::uint64_t hash = 0;  // FNV-1a of the canonical JSON text

  const PolygonalRegion& region(const std::string& name) const;
  const Shape& shape(const std::string& name) const;
  const MotionFamily& family(const std::string& name) const;
  ValuationPair valuation(const std::string& name) const;
};

/// Parses and validates a scene. Every problem found is reported in one
/// SceneError (syntax errors carry the line number).
/// A seed override replaces the scene seed before family seeds are derived.
Scene parse_scene(const std::string& text, std::optional<std::uint64_t> seed_override = std::nullopt);
Scene load_scene(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace kinval
