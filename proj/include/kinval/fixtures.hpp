#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kinval/geometry.hpp"

namespace kinval {

PolygonalRegion unit_square();
/// [0,2]×[0,1] ∪ [0,1]×[0,2]
PolygonalRegion l_shape();
/// [0,3]² with the hole [1,2]²
PolygonalRegion holed_square();
/// [0,1]² and [2,3]×[0,1]
PolygonalRegion two_squares();

/// square, L, holed, two_squares. Throws SceneError.
PolygonalRegion builtin_shape(const std::string& name);
std::vector<std::string> builtin_shape_names();

enum class FixtureKind { Convex, Star, LShape, Holed, Disconnected };

/// Seeded random region; kind cycles with the index unless given.
PolygonalRegion random_region(std::uint64_t seed, int index);
PolygonalRegion random_region(std::uint64_t seed, int index, FixtureKind kind);
FixtureKind fixture_kind(int index);

/// Seeded pair (A, B) with transverse, overlapping boundaries.
std::pair<PolygonalRegion, PolygonalRegion> random_transverse_pair(std::uint64_t seed, int index);

/// Seeded coefficients for poly_trig, scaled to keep values O(1) on [-3, 3]².
std::vector<double> random_poly_trig_params(std::uint64_t seed, int index, bool with_gamma = true);

}  // namespace kinval
