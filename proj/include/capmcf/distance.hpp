// Signed distance to the current set via first-order fast marching.
#pragma once

#include <vector>

#include "capmcf/geometry.hpp"
#include "capmcf/grid.hpp"

namespace capmcf {

struct SignedDistanceField {
    ScalarField d;
    double max_abs = 0.0;  // recorded max-norm of d
};

// First-order upwind fast marching from the given seeds (binary-heap front,
// ties broken by value then linear node index). Returns the unsigned
// distance at every node. Seed values must be >= 0; the seed list must be
// nonempty.
ScalarField fast_march(const std::vector<SeedPoint>& seeds, const GridSpec& grid);

// Unsigned fast-marched distance from the zero level of w, re-signed
// negative where w <= 0. On the rectangle this geodesic distance coincides
// with the Euclidean one. Throws when w has uniform sign.
SignedDistanceField signed_distance(const ScalarField& w);

}  // namespace capmcf
