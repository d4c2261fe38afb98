#include "kinval/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "kinval/errors.hpp"

namespace kinval {

using nlohmann::json;

CheckRecord make_check(std::string name, double lhs, double rhs, double tolerance, double floor) {
  CheckRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_error = std::abs(lhs - rhs);
  r.rel_error = r.abs_error / std::max(std::abs(rhs), floor);
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.rel_error) && r.rel_error <= tolerance;
  return r;
}

bool VerificationReport::passed() const {
  for (const CheckRecord& c : checks)
    if (!c.pass) return false;
  return true;
}

json VerificationReport::body() const {
  json checks_json = json::array();
  for (const CheckRecord& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"lhs", c.lhs},
                           {"rhs", c.rhs},
                           {"abs_error", c.abs_error},
                           {"rel_error", c.rel_error},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  }
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << scene_hash;
  return {{"subcommand", subcommand},
          {"scene_hash", hash.str()},
          {"seed", seed},
          {"checks", checks_json},
          {"settings", settings},
          {"results", results},
          {"perturbations", perturbations},
          {"flags", flags},
          {"calibration", {{"joint_arc_sign", joint_arc_sign}, {"sigma_orientation", sigma_orientation}}},
          {"pass", passed()}};
}

json VerificationReport::to_json() const {
  json j = body();
  j["wall_time_s"] = wall_time;
  return j;
}

std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "name,lhs,rhs,abs_error,rel_error,tolerance,pass\n";
  for (const CheckRecord& c : checks) {
    os << c.name << ',' << c.lhs << ',' << c.rhs << ',' << c.abs_error << ',' << c.rel_error << ','
       << c.tolerance << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

json quadrature_json(const QuadratureOptions& opt) {
  return {{"nodes", opt.nodes}, {"rel_tol", opt.rel_tol}, {"abs_floor", opt.abs_floor}, {"max_panels", opt.max_panels}};
}

void write_report(const VerificationReport& r, const std::string& path) {
  std::ofstream js(path);
  if (!js) throw Error(ErrorKind::SceneError, "cannot write report '" + path + "'");
  js << r.to_json().dump(2) << '\n';
  std::string csv_path = path;
  const auto dot = csv_path.rfind('.');
  const auto slash = csv_path.rfind('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) csv_path.resize(dot);
  csv_path += ".csv";
  std::ofstream cs(csv_path);
  if (!cs) throw Error(ErrorKind::SceneError, "cannot write report '" + csv_path + "'");
  cs << r.to_csv();
}

}  // namespace kinval
