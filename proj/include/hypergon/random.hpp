#pragma once

// Seeded generators for test data: group elements, polygons and stable
// configurations. All draw from a caller-owned mt19937_64.

#include <random>

#include "hypergon/gaussmap.hpp"

namespace hypergon::random {

using Rng = std::mt19937_64;

/// Entries standard normal times `scale`, rescaled to unit determinant.
Mat2 sl2c(Rng& rng, double scale = 1.0);
/// Haar-distributed.
borel::SU2Elem su2(Rng& rng);
/// log a and Re z, Im z standard normal times `scale`.
borel::BElem belem(Rng& rng, double scale = 1.0);
borel::Word word(Rng& rng, int n, double scale = 1.0);
hyp3::BoundaryPoint boundary(Rng& rng);
/// Uniform direction, distance from * uniform in [0, radius].
Vec4 point_h(Rng& rng, double radius);
/// Anti-Hermitian traceless with standard normal coordinates.
Mat2 su2_algebra(Rng& rng);
/// Random vertices within `radius` of *, closed and based.
moduli::HPolygon closed_polygon(Rng& rng, int n, double radius = 1.5);
/// Random edges closed by subtracting the mean; lengths rescaled around 1.
moduli::EPolygon closed_epolygon(Rng& rng, int n);
/// Distinct random points with weights in [0.5, 1.5], redrawn until stable
/// with the heaviest cluster below (1/2 - margin) of the total.
gaussmap::Configuration stable_configuration(Rng& rng, int n, double margin = 0.05);

}  // namespace hypergon::random
