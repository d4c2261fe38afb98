#include "kinval/scene.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "kinval/fixtures.hpp"
#include "kinval/seeding.hpp"

namespace kinval {

using nlohmann::json;

namespace {

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Point parse_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorKind::SceneError, where + ": expected [x, y]");
  }
  return Point(j[0].get<double>(), j[1].get<double>());
}

Shape parse_shape(const json& j, const std::string& name) {
  const std::string where = "shape '" + name + "'";
  if (j.is_object()) {
    if (j.contains("builtin")) return builtin_shape(j.at("builtin").get<std::string>());
    if (j.contains("points")) {
      std::vector<Point> pts;
      for (const json& p : j.at("points")) pts.push_back(parse_point(p, where));
      return PointSet::from_points(std::move(pts));
    }
    throw Error(ErrorKind::SceneError, where + ": object needs 'points' or 'builtin'");
  }
  if (!j.is_array()) throw Error(ErrorKind::SceneError, where + ": expected a list of loops");
  std::vector<Loop> loops;
  for (const json& l : j) {
    if (!l.is_array()) throw Error(ErrorKind::SceneError, where + ": each loop must be a list of [x, y]");
    Loop loop;
    for (const json& p : l) loop.push_back(parse_point(p, where));
    loops.push_back(std::move(loop));
  }
  try {
    return PolygonalRegion::from_loops(std::move(loops));
  } catch (const Error& e) {
    throw Error(ErrorKind::SceneError, where + ": " + e.what());
  }
}

MotionFamily parse_family(const json& j, const std::string& name, std::uint64_t scene_seed) {
  MotionFamily f;
  const std::string where = "family '" + name + "'";
  if (!j.contains("plateau")) throw Error(ErrorKind::SceneError, where + ": missing 'plateau'");
  const json& p = j.at("plateau");
  f.plateau.r0 = p.at("R0").get<double>();
  f.plateau.r1 = p.at("R1").get<double>();
  f.plateau.c = p.value("c", 1.0);
  if (!(f.plateau.r1 > f.plateau.r0) || f.plateau.r0 < 0) {
    throw Error(ErrorKind::SceneError, where + ": plateau needs 0 <= R0 < R1");
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_array() || g.size() != 3) throw Error(ErrorKind::SceneError, where + ": grid must be [na, nx, ny]");
    for (int k = 0; k < 3; ++k) {
      f.grid[k] = g[k].get<int>();
      if (f.grid[k] < 1) throw Error(ErrorKind::SceneError, where + ": grid entries must be positive");
    }
  }
  if (j.contains("profile")) {
    const std::string prof = j.at("profile").get<std::string>();
    if (prof == "indicator") {
      f.profile = Profile::Indicator;
    } else if (prof != "smooth") {
      throw Error(ErrorKind::SceneError, where + ": unknown profile '" + prof + "'");
    }
  }
  f.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : derive_seed(scene_seed, "family:" + name);
  return f;
}

}  // namespace

const Shape& Scene::shape(const std::string& name) const {
  auto it = shapes.find(name);
  if (it == shapes.end()) throw Error(ErrorKind::SceneError, "unknown shape '" + name + "'");
  return it->second;
}

const PolygonalRegion& Scene::region(const std::string& name) const {
  const Shape& s = shape(name);
  if (const auto* r = std::get_if<PolygonalRegion>(&s)) return *r;
  throw Error(ErrorKind::SceneError, "shape '" + name + "' must be a polygonal region");
}

const MotionFamily& Scene::family(const std::string& name) const {
  auto it = families.find(name);
  if (it == families.end()) throw Error(ErrorKind::SceneError, "unknown family '" + name + "'");
  return it->second;
}

ValuationPair Scene::valuation(const std::string& name) const {
  auto it = forms.find(name);
  if (it == forms.end()) throw Error(ErrorKind::SceneError, "unknown form '" + name + "'");
  return it->second.resolve();
}

Scene parse_scene(const std::string& text, std::optional<std::uint64_t> seed_override) {
  std::vector<std::string> errors;
  // Duplicate keys are rejected while parsing; nlohmann would keep the last one.
  std::vector<std::set<std::string>> open_keys;
  std::vector<std::string> owners;
  std::string last_key;
  auto callback = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        open_keys.emplace_back();
        owners.push_back(last_key);
        break;
      case json::parse_event_t::key: {
        const std::string key = parsed.get<std::string>();
        if (!open_keys.empty() && !open_keys.back().insert(key).second) {
          const std::string& owner = owners.back();
          errors.push_back("duplicate key '" + key + "'" + (owner.empty() ? "" : " in '" + owner + "'"));
        }
        last_key = key;
        break;
      }
      case json::parse_event_t::object_end:
        if (!open_keys.empty()) open_keys.pop_back();
        if (!owners.empty()) owners.pop_back();
        break;
      default:
        break;
    }
    return true;
  };
  json doc;
  try {
    doc = json::parse(text, callback);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SceneError,
                "syntax error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!errors.empty()) {
    std::string msg;
    for (const std::string& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    throw Error(ErrorKind::SceneError, msg);
  }
  if (!doc.is_object()) throw Error(ErrorKind::SceneError, "scene must be a JSON object");

  Scene scene;
  auto guard = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      std::string msg = e.what();
      const std::string prefix = std::string(to_string(ErrorKind::SceneError)) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
      errors.push_back(msg);
    } catch (const json::exception& e) {
      errors.push_back(e.what());
    }
  };
  if (!doc.contains("seed") || !doc.at("seed").is_number_unsigned()) {
    errors.push_back("'seed' (non-negative integer) is required");
  } else {
    scene.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (seed_override) scene.seed = *seed_override;
  if (doc.contains("shapes")) {
    for (const auto& [name, j] : doc.at("shapes").items()) {
      guard([&, name = name, &j = j] { scene.shapes.emplace(name, parse_shape(j, name)); });
    }
  }
  if (doc.contains("forms")) {
    for (const auto& [name, j] : doc.at("forms").items()) {
      guard([&, name = name, &j = j] {
        FormSpec spec{j.at("name").get<std::string>(), j.value("params", std::vector<double>{})};
        spec.resolve();
        scene.forms.emplace(name, spec);
      });
    }
  }
  if (doc.contains("families")) {
    for (const auto& [name, j] : doc.at("families").items()) {
      guard([&, name = name, &j = j] { scene.families.emplace(name, parse_family(j, name, scene.seed)); });
    }
  }
  if (doc.contains("quadrature")) {
    guard([&] {
      const json& q = doc.at("quadrature");
      scene.quadrature.nodes = q.value("nodes", scene.quadrature.nodes);
      scene.quadrature.rel_tol = q.value("rel_tol", scene.quadrature.rel_tol);
      scene.quadrature.max_panels = q.value("max_panels", scene.quadrature.max_panels);
    });
  }
  if (doc.contains("kinematic")) {
    guard([&] {
      const json& k = doc.at("kinematic");
      KinematicSpec spec;
      spec.a = k.at("A").get<std::string>();
      spec.x = k.at("X").get<std::string>();
      spec.family = k.at("family").get<std::string>();
      spec.valuation = k.value("valuation", std::string("chi"));
      if (k.contains("measure")) spec.measure = k.at("measure").get<std::string>();
      if (k.contains("E")) spec.e = k.at("E").get<std::string>();
      scene.kinematic = spec;
    });
    if (scene.kinematic) {
      const KinematicSpec& k = *scene.kinematic;
      for (const std::string* s : {&k.a, &k.x})
        if (!scene.shapes.count(*s)) errors.push_back("kinematic references unknown shape '" + *s + "'");
      if (k.e && !scene.shapes.count(*k.e))
        errors.push_back("kinematic references unknown shape '" + *k.e + "'");
      if (!scene.families.count(k.family))
        errors.push_back("kinematic references unknown family '" + k.family + "'");
      if (!scene.forms.count(k.valuation))
        errors.push_back("kinematic references unknown form '" + k.valuation + "'");
      if (k.measure && !scene.forms.count(*k.measure))
        errors.push_back("kinematic references unknown form '" + *k.measure + "'");
    }
  }
  if (!errors.empty()) {
    std::string msg;
    for (const std::string& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    throw Error(ErrorKind::SceneError, msg);
  }
  scene.hash = fnv1a(doc.dump());
  return scene;
}

Scene load_scene(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SceneError, "cannot open scene file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scene(os.str(), seed_override);
}

}  // namespace kinval
