#include "kinval/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "kinval/seeding.hpp"

namespace kinval {

PolygonalRegion unit_square() { return PolygonalRegion::box(0, 0, 1, 1); }

PolygonalRegion l_shape() { return PolygonalRegion::from_loops({{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}}); }

PolygonalRegion holed_square() {
  return PolygonalRegion::from_loops({{{0, 0}, {3, 0}, {3, 3}, {0, 3}}, {{1, 1}, {1, 2}, {2, 2}, {2, 1}}});
}

PolygonalRegion two_squares() {
  return PolygonalRegion::from_loops({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{2, 0}, {3, 0}, {3, 1}, {2, 1}}});
}

PolygonalRegion builtin_shape(const std::string& name) {
  if (name == "square") return unit_square();
  if (name == "L") return l_shape();
  if (name == "holed") return holed_square();
  if (name == "two_squares") return two_squares();
  throw Error(ErrorKind::SceneError, "unknown built-in shape '" + name + "'");
}

std::vector<std::string> builtin_shape_names() { return {"square", "L", "holed", "two_squares"}; }

namespace {

// Sorted random angles give a star-shaped loop around the center.
Loop star_loop(std::uint64_t& state, const Point& center, double rmin, double rmax, int n, bool convex) {
  std::vector<double> angles(n);
  for (int i = 0; i < n; ++i) angles[i] = kTwoPi * (i + 0.15 + 0.7 * uniform01(state)) / n;
  std::sort(angles.begin(), angles.end());
  Loop loop;
  const double r_convex = rmin + (rmax - rmin) * uniform01(state);
  for (int i = 0; i < n; ++i) {
    const double r = convex ? r_convex : rmin + (rmax - rmin) * uniform01(state);
    loop.push_back(center + r * unit_vector(angles[i]));
  }
  return loop;
}

Loop reversed(Loop l) {
  std::reverse(l.begin(), l.end());
  return l;
}

}  // namespace

FixtureKind fixture_kind(int index) { return static_cast<FixtureKind>(index % 5); }

PolygonalRegion random_region(std::uint64_t seed, int index) {
  return random_region(seed, index, fixture_kind(index));
}

PolygonalRegion random_region(std::uint64_t seed, int index, FixtureKind kind) {
  std::uint64_t state = derive_seed(seed, "region", static_cast<std::uint64_t>(index));
  const Point center(2 * uniform01(state) - 1, 2 * uniform01(state) - 1);
  for (int attempt = 0; attempt < 100; ++attempt) {
    try {
      switch (kind) {
        case FixtureKind::Convex: {
          const int n = 3 + static_cast<int>(6 * uniform01(state));
          return PolygonalRegion::from_loops({star_loop(state, center, 0.5, 1.5, n, true)});
        }
        case FixtureKind::Star: {
          const int n = 5 + static_cast<int>(8 * uniform01(state));
          return PolygonalRegion::from_loops({star_loop(state, center, 0.4, 1.5, n, false)});
        }
        case FixtureKind::LShape: {
          const double a = 0.5 + uniform01(state), b = 0.5 + uniform01(state);
          const double ca = 0.2 + 0.6 * uniform01(state), cb = 0.2 + 0.6 * uniform01(state);
          Loop l{{0, 0}, {a, 0}, {a, cb * b}, {ca * a, cb * b}, {ca * a, b}, {0, b}};
          const RigidMotion g{kTwoPi * uniform01(state), center};
          for (Point& p : l) p = g.apply(p);
          return PolygonalRegion::from_loops({l});
        }
        case FixtureKind::Holed: {
          const int n = 4 + static_cast<int>(5 * uniform01(state));
          const Loop outer = star_loop(state, center, 1.2, 1.6, n, true);
          const int m = 3 + static_cast<int>(4 * uniform01(state));
          const Point off(0.2 * (2 * uniform01(state) - 1), 0.2 * (2 * uniform01(state) - 1));
          const Loop hole = star_loop(state, center + off, 0.3, 0.6, m, false);
          return PolygonalRegion::from_loops({outer, reversed(hole)});
        }
        case FixtureKind::Disconnected: {
          const Point shift = 1.2 * unit_vector(kTwoPi * uniform01(state));
          const Loop a = star_loop(state, center + shift, 0.3, 0.9, 3 + static_cast<int>(5 * uniform01(state)), true);
          const Loop b = star_loop(state, center - shift, 0.3, 0.9, 3 + static_cast<int>(5 * uniform01(state)), false);
          return PolygonalRegion::from_loops({a, b});
        }
      }
    } catch (const Error&) {
      // Rejected sample; draw again.
    }
  }
  throw Error(ErrorKind::InvalidRegion, "could not draw a valid random region");
}

std::pair<PolygonalRegion, PolygonalRegion> random_transverse_pair(std::uint64_t seed, int index) {
  std::uint64_t state = derive_seed(seed, "pair", static_cast<std::uint64_t>(index));
  for (int attempt = 0;; ++attempt) {
    const PolygonalRegion a = random_region(seed, 2 * index + attempt * 1000);
    const PolygonalRegion b0 = random_region(seed, 2 * index + 1 + attempt * 1000);
    const RigidMotion g{kTwoPi * uniform01(state), Point(uniform01(state) - 0.5, uniform01(state) - 0.5)};
    const PolygonalRegion b = apply_motion(g, b0);
    if (transversality_check(a, b) && !boundary_crossings(a, b).empty()) return {a, b};
  }
}

std::vector<double> random_poly_trig_params(std::uint64_t seed, int index, bool with_gamma) {
  std::uint64_t state = derive_seed(seed, "poly_trig", static_cast<std::uint64_t>(index));
  std::vector<double> w(with_gamma ? 96 : 90);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int monomial = static_cast<int>((i % 30) / 5);
    const double scale = monomial == 0 ? 1.0 : (monomial < 3 ? 0.5 : 0.2);
    w[i] = scale * (2 * uniform01(state) - 1);
  }
  if (with_gamma) {
    for (int i = 90; i < 96; ++i) w[i] = (i < 93 ? 0.5 : 0.2) * (2 * uniform01(state) - 1);
  }
  return w;
}

}  // namespace kinval
