#include "capmcf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace capmcf {

Polygon load_polygon(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_polygon: cannot open " + path);
    Polygon poly;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        Point p;
        if (!(ls >> p.x >> p.y)) {
            throw std::runtime_error("load_polygon: bad vertex at " + path +
                                     ":" + std::to_string(lineno));
        }
        poly.vertices.push_back(p);
    }
    if (poly.vertices.size() < 3)
        throw std::runtime_error("load_polygon: fewer than 3 vertices in " + path);
    return poly;
}

namespace {

double squared_point_segment_distance(Point p, Point a, Point b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double wx = p.x - a.x, wy = p.y - a.y;
    const double vv = vx * vx + vy * vy;
    double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = wx - t * vx, dy = wy - t * vy;
    return dx * dx + dy * dy;
}

double polygon_diameter(const Polygon& poly) {
    double lox = std::numeric_limits<double>::infinity(), hix = -lox;
    double loy = lox, hiy = -lox;
    for (const Point& v : poly.vertices) {
        lox = std::min(lox, v.x);
        hix = std::max(hix, v.x);
        loy = std::min(loy, v.y);
        hiy = std::max(hiy, v.y);
    }
    return std::hypot(hix - lox, hiy - loy);
}

int winding_number(const Polygon& poly, Point p) {
    // Crossing counts of the upward/downward edges against the horizontal
    // ray, with orientation tests on doubles.
    int wn = 0;
    const std::size_t n = poly.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point a = poly.vertices[k];
        const Point b = poly.vertices[(k + 1) % n];
        const double cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
        if (a.y <= p.y) {
            if (b.y > p.y && cross > 0.0) ++wn;
        } else {
            if (b.y <= p.y && cross < 0.0) --wn;
        }
    }
    return wn;
}

}  // namespace

bool point_in_polygon(const Polygon& poly, Point p) {
    if (poly.vertices.size() < 3)
        throw std::invalid_argument("point_in_polygon: polygon needs >= 3 vertices");
    const double tol = 1e-12 * polygon_diameter(poly);
    const double tol2 = tol * tol;
    const std::size_t n = poly.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point a = poly.vertices[k];
        const Point b = poly.vertices[(k + 1) % n];
        if (squared_point_segment_distance(p, a, b) <= tol2) return true;
    }
    return winding_number(poly, p) != 0;
}

ScalarField sign_grid(const Polygon& poly, const GridSpec& grid) {
    ScalarField s(grid);
    for (int i = 1; i <= grid.n_y; ++i) {
        const double y = grid.y_of(i);
        for (int j = 1; j <= grid.n_x; ++j)
            s.at(i, j) = point_in_polygon(poly, {grid.x_of(j), y}) ? -1.0 : 1.0;
    }
    return s;
}

namespace {

inline bool is_inside(double w) { return w <= 0.0; }

// Distance from the node with value a to the zero crossing on an edge whose
// far end has value b of the opposite sign, as a fraction of dx.
inline double crossing_fraction(double a, double b) {
    const double den = std::abs(a) + std::abs(b);
    return den > 0.0 ? std::abs(a) / den : 0.0;
}

}  // namespace

std::vector<SeedPoint> narrow_band_seed(const ScalarField& w) {
    const GridSpec& g = w.grid;
    const double dx = g.dx;
    std::vector<SeedPoint> seeds;
    bool any_in = false, any_out = false;
    for (int i = 1; i <= g.n_y; ++i) {
        for (int j = 1; j <= g.n_x; ++j) {
            const double a = w.at(i, j);
            (is_inside(a) ? any_in : any_out) = true;
            double best = std::numeric_limits<double>::infinity();
            const auto consider = [&](double b) {
                if (is_inside(a) != is_inside(b))
                    best = std::min(best, crossing_fraction(a, b) * dx);
            };
            if (j > 1) consider(w.at(i, j - 1));
            if (j < g.n_x) consider(w.at(i, j + 1));
            if (i > 1) consider(w.at(i - 1, j));
            if (i < g.n_y) consider(w.at(i + 1, j));
            if (best < std::numeric_limits<double>::infinity())
                seeds.push_back({i, j, best});
        }
    }
    if (!any_in || !any_out)
        throw std::runtime_error("narrow_band_seed: empty interface");
    return seeds;
}

namespace {

// Edge of the node grid, keyed by its lower-left node and direction
// (0 = horizontal toward +x, 1 = vertical toward +y).
struct EdgeKey {
    int i, j, dir;
    auto operator<=>(const EdgeKey&) const = default;
};

Point edge_point(const ScalarField& w, const EdgeKey& e) {
    const GridSpec& g = w.grid;
    const double a = w.at(e.i, e.j);
    const double b = e.dir == 0 ? w.at(e.i, e.j + 1) : w.at(e.i + 1, e.j);
    const double t = crossing_fraction(a, b);
    const double x = g.x_of(e.j) + (e.dir == 0 ? t * g.dx : 0.0);
    const double y = g.y_of(e.i) + (e.dir == 1 ? t * g.dx : 0.0);
    return {x, y};
}

}  // namespace

std::vector<Polyline> extract_zero_contour(const ScalarField& w) {
    const GridSpec& g = w.grid;
    // Per cell (lower-left node (i,j)), connect the crossing edges. The
    // ambiguous saddle cases are split by the cell-center average.
    std::map<EdgeKey, std::vector<EdgeKey>> links;
    const auto link = [&](const EdgeKey& a, const EdgeKey& b) {
        links[a].push_back(b);
        links[b].push_back(a);
    };
    for (int i = 1; i < g.n_y; ++i) {
        for (int j = 1; j < g.n_x; ++j) {
            const bool s00 = is_inside(w.at(i, j));
            const bool s10 = is_inside(w.at(i, j + 1));
            const bool s11 = is_inside(w.at(i + 1, j + 1));
            const bool s01 = is_inside(w.at(i + 1, j));
            const int mask = (s00 ? 1 : 0) | (s10 ? 2 : 0) | (s11 ? 4 : 0) | (s01 ? 8 : 0);
            if (mask == 0 || mask == 15) continue;
            const EdgeKey bottom{i, j, 0}, right{i, j + 1, 1};
            const EdgeKey top{i + 1, j, 0}, left{i, j, 1};
            switch (mask) {
                case 1: case 14: link(bottom, left); break;
                case 2: case 13: link(bottom, right); break;
                case 4: case 11: link(right, top); break;
                case 8: case 7: link(top, left); break;
                case 3: case 12: link(left, right); break;
                case 6: case 9: link(bottom, top); break;
                case 5: case 10: {
                    const double center = 0.25 * (w.at(i, j) + w.at(i, j + 1) +
                                                  w.at(i + 1, j) + w.at(i + 1, j + 1));
                    const bool center_in = is_inside(center);
                    // Pair crossings so the contour separates the diagonal
                    // corners consistently with the center sample.
                    if ((mask == 5) == center_in) {
                        link(bottom, right);
                        link(top, left);
                    } else {
                        link(bottom, left);
                        link(right, top);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    std::vector<Polyline> out;
    // Walk chains: open chains start at degree-1 edges, then remaining loops.
    std::map<EdgeKey, bool> visited;
    const auto walk = [&](EdgeKey start) {
        Polyline line;
        line.push_back(edge_point(w, start));
        visited[start] = true;
        EdgeKey prev = start, cur = start;
        while (true) {
            const auto it = links.find(cur);
            bool advanced = false;
            for (const EdgeKey& cand : it->second) {
                if (cand == prev && !(cur == prev)) continue;
                if (visited.count(cand) && !(cand == start)) continue;
                if (cand == start) {
                    if (line.size() > 2) {
                        line.push_back(edge_point(w, start));  // close the loop
                    }
                    return line;
                }
                visited[cand] = true;
                line.push_back(edge_point(w, cand));
                prev = cur;
                cur = cand;
                advanced = true;
                break;
            }
            if (!advanced) return line;
        }
    };
    for (const auto& [key, nbrs] : links) {
        if (nbrs.size() == 1 && !visited.count(key)) out.push_back(walk(key));
    }
    for (const auto& [key, nbrs] : links) {
        if (!visited.count(key)) out.push_back(walk(key));
    }
    return out;
}

bool polyline_is_closed(const Polyline& p) {
    if (p.size() < 4) return false;
    return p.front().x == p.back().x && p.front().y == p.back().y;
}

double polygon_area(const Polyline& closed) {
    double twice = 0.0;
    for (std::size_t k = 0; k + 1 < closed.size(); ++k)
        twice += closed[k].x * closed[k + 1].y - closed[k + 1].x * closed[k].y;
    return 0.5 * std::abs(twice);
}

}  // namespace capmcf
