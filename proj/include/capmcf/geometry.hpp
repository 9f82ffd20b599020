// Closed polygonal initial data and zero-contour tools.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "capmcf/grid.hpp"

namespace capmcf {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Closed planar polyline; the last vertex connects back to the first.
struct Polygon {
    std::vector<Point> vertices;
};

// Polygon file: one "x y" pair per line, '#' comment lines, implicit closure.
Polygon load_polygon(const std::string& path);

// Nonzero winding number. Points on an edge (within 1e-12 of the polygon
// diameter) count as inside.
bool point_in_polygon(const Polygon& poly, Point p);

// -1 at nodes inside poly, +1 outside (negative-inside convention).
ScalarField sign_grid(const Polygon& poly, const GridSpec& grid);

struct SeedPoint {
    int i = 0;
    int j = 0;
    double distance = 0.0;
};

// First-order distance estimates at nodes adjacent to the zero level of w:
// linear interpolation of the sign-change location along grid axes, minimum
// over the up-to-4 opposite-sign neighbors. Values w >= 0 count as outside,
// w < 0 as inside; an exact zero node seeds distance 0 (and sits inside).
// Works on +-1 sign fields (estimates dx/2) and on real level-set fields
// (sub-cell estimates). Throws if w has uniform sign.
std::vector<SeedPoint> narrow_band_seed(const ScalarField& w);

using Polyline = std::vector<Point>;

// Marching squares on the node grid: zero level line of w, vertices by
// linear interpolation along sign-change edges. Closed loops repeat their
// first vertex at the end. Empty when w never changes sign.
std::vector<Polyline> extract_zero_contour(const ScalarField& w);

bool polyline_is_closed(const Polyline& p);
double polygon_area(const Polyline& closed);

}  // namespace capmcf
