#include "capmcf/capillary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capmcf {

BoundaryArcs detect_contact_arcs(const ScalarField& w, double rho) {
    const BoundaryField ring(w.grid);  // geometry only
    const int R = ring.ring_size();
    const double dx = w.grid.dx;
    const double L = ring.ring_length();
    BoundaryArcs arcs;
    arcs.mask.assign(R, 0);

    const auto inside = [&](int k) {
        const auto [i, j] = ring.node(k);
        return w.at(i, j) <= 0.0;
    };
    const auto value = [&](int k) {
        const auto [i, j] = ring.node(k);
        return w.at(i, j);
    };
    for (int k = 0; k < R; ++k) {
        const int kn = (k + 1) % R;
        if (inside(k) == inside(kn)) continue;
        const double a = value(k), b = value(kn);
        const double den = std::abs(a) + std::abs(b);
        const double t = den > 0.0 ? std::abs(a) / den : 0.0;
        arcs.crossings.push_back((k + t) * dx);
    }
    for (int k = 0; k < R && !arcs.crossings.empty(); ++k) {
        const double s = k * dx;
        for (double c : arcs.crossings) {
            double d = std::abs(s - c);
            d = std::min(d, L - d);
            if (d <= rho) {
                arcs.mask[k] = 1;
                break;
            }
        }
    }
    return arcs;
}

BuildBetaResult build_beta(const ContactAngleSpec& spec, const BoundaryArcs& arcs,
                           double t, const GridSpec& grid) {
    if (!spec.theta) throw std::invalid_argument("build_beta: theta not set");
    BuildBetaResult out;
    out.beta = BoundaryField(grid);
    const int R = out.beta.ring_size();
    const double dx = grid.dx;

    int covered = 0;
    double integral = 0.0;  // int_N cos(theta) dH
    for (int k = 0; k < R; ++k) {
        if (k < static_cast<int>(arcs.mask.size()) && arcs.mask[k]) {
            const double th = spec.theta(t, k * dx);
            if (!(th >= 0.0 && th <= std::numbers::pi))
                throw std::domain_error("build_beta: theta outside [0, pi]");
            const double c = std::cos(th);
            out.beta.values[k] = -c;
            integral += c * dx;
            ++covered;
        }
    }
    if (covered == R)
        throw std::runtime_error(
            "build_beta: contact arcs cover the whole boundary; the complement "
            "must have positive measure");
    const double comp = integral / ((R - covered) * dx);
    out.compensation = comp;
    out.compensation_exceeds_one = std::abs(comp) > 1.0;
    for (int k = 0; k < R; ++k)
        if (!(k < static_cast<int>(arcs.mask.size()) && arcs.mask[k]))
            out.beta.values[k] = comp;
    return out;
}

namespace {

double forward_tv(const ScalarField& u) {
    const GridSpec& g = u.grid;
    const double dx = g.dx;
    double tv = 0.0;
    for (int i = 1; i <= g.n_y; ++i) {
        for (int j = 1; j <= g.n_x; ++j) {
            const double fx = (j < g.n_x) ? (u.at(i, j + 1) - u.at(i, j)) / dx : 0.0;
            const double fy = (i < g.n_y) ? (u.at(i + 1, j) - u.at(i, j)) / dx : 0.0;
            tv += std::sqrt(fx * fx + fy * fy);
        }
    }
    return tv * dx * dx;
}

}  // namespace

double capillary_energy(const ScalarField& u, const BoundaryField& beta) {
    double boundary = 0.0;
    for (int k = 0; k < beta.ring_size(); ++k) {
        const auto [i, j] = beta.node(k);
        boundary += beta.values[k] * u.at(i, j);
    }
    return forward_tv(u) + boundary * u.grid.dx;
}

double chambolle_energy(const ScalarField& u, const ScalarField& f,
                        const BoundaryField& beta, double h) {
    if (h <= 0.0) throw std::invalid_argument("chambolle_energy: h must be > 0");
    double fid = 0.0;
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        const double r = u.values[k] - f.values[k];
        fid += r * r;
    }
    const double dx = u.grid.dx;
    return capillary_energy(u, beta) + fid * dx * dx / (2.0 * h);
}

double atw_energy(const ScalarField& indicator, const SignedDistanceField& dist0,
                  const BoundaryField& beta, double lambda_atw) {
    const double dx = indicator.grid.dx;
    double symdiff = 0.0;
    for (std::size_t k = 0; k < indicator.values.size(); ++k) {
        const bool in_F = indicator.values[k] != 0.0;
        const bool in_E0 = dist0.d.values[k] <= 0.0;
        if (in_F != in_E0) symdiff += std::abs(dist0.d.values[k]);
    }
    return capillary_energy(indicator, beta) + lambda_atw * symdiff * dx * dx;
}

}  // namespace capmcf
