#include "capmcf/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace capmcf {

namespace {

constexpr double kFar = std::numeric_limits<double>::infinity();

struct HeapEntry {
    double value;
    int node;
    bool operator>(const HeapEntry& o) const {
        if (value != o.value) return value > o.value;
        return node > o.node;
    }
};

}  // namespace

ScalarField fast_march(const std::vector<SeedPoint>& seeds, const GridSpec& grid) {
    if (seeds.empty()) throw std::invalid_argument("fast_march: empty seed list");
    const int nx = grid.n_x, ny = grid.n_y;
    const double dx = grid.dx;
    ScalarField dist(grid, kFar);
    std::vector<char> known(grid.size(), 0);
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;

    const auto id = [nx](int i, int j) { return (i - 1) * nx + (j - 1); };

    for (const SeedPoint& s : seeds) {
        if (s.distance < 0.0)
            throw std::invalid_argument("fast_march: negative seed value");
        double& v = dist.values[id(s.i, s.j)];
        if (s.distance < v) {
            v = s.distance;
            heap.push({s.distance, id(s.i, s.j)});
        }
    }

    // Upwind update from the accepted neighbors along each axis.
    const auto update = [&](int i, int j) {
        double ax = kFar, ay = kFar;
        if (j > 1 && known[id(i, j - 1)]) ax = dist.values[id(i, j - 1)];
        if (j < nx && known[id(i, j + 1)]) ax = std::min(ax, dist.values[id(i, j + 1)]);
        if (i > 1 && known[id(i - 1, j)]) ay = dist.values[id(i - 1, j)];
        if (i < ny && known[id(i + 1, j)]) ay = std::min(ay, dist.values[id(i + 1, j)]);
        double t;
        if (ax > ay) std::swap(ax, ay);
        if (ay == kFar) {
            t = ax + dx;
        } else if (ay - ax >= dx) {
            t = ax + dx;
        } else {
            const double s = ax + ay;
            const double disc = 2.0 * dx * dx - (ax - ay) * (ax - ay);
            t = 0.5 * (s + std::sqrt(disc));
        }
        double& v = dist.values[id(i, j)];
        if (t < v) {
            v = t;
            heap.push({t, id(i, j)});
        }
    };

    while (!heap.empty()) {
        const HeapEntry e = heap.top();
        heap.pop();
        if (known[e.node] || e.value > dist.values[e.node]) continue;  // stale
        known[e.node] = 1;
        const int i = e.node / nx + 1;
        const int j = e.node % nx + 1;
        if (j > 1 && !known[id(i, j - 1)]) update(i, j - 1);
        if (j < nx && !known[id(i, j + 1)]) update(i, j + 1);
        if (i > 1 && !known[id(i - 1, j)]) update(i - 1, j);
        if (i < ny && !known[id(i + 1, j)]) update(i + 1, j);
    }
    return dist;
}

SignedDistanceField signed_distance(const ScalarField& w) {
    const std::vector<SeedPoint> seeds = narrow_band_seed(w);
    SignedDistanceField out;
    out.d = fast_march(seeds, w.grid);
    for (std::size_t k = 0; k < out.d.values.size(); ++k) {
        if (w.values[k] <= 0.0) out.d.values[k] = -out.d.values[k];
        out.max_abs = std::max(out.max_abs, std::abs(out.d.values[k]));
    }
    return out;
}

}  // namespace capmcf
