// Discrete capillary energies and contact-angle boundary weights.
#pragma once

#include <functional>
#include <vector>

#include "capmcf/boundary.hpp"
#include "capmcf/distance.hpp"
#include "capmcf/grid.hpp"

namespace capmcf {

// Prescribed contact angle theta(t, s) in [0, pi], with s the arc-length
// position along the boundary ring, plus the radius of the boundary
// neighborhood carrying -cos(theta) around each contact point.
struct ContactAngleSpec {
    std::function<double(double t, double s)> theta;
    double rho = 0.0;
};

// Boundary arcs around the contact points of a level-set field.
struct BoundaryArcs {
    std::vector<double> crossings;  // arc-length positions of w sign changes
    std::vector<char> mask;         // ring nodes within rho of a crossing
};

// Sign changes of w along the boundary ring, dilated by rho (ring metric).
// Empty mask and crossings when the zero level does not meet the boundary.
BoundaryArcs detect_contact_arcs(const ScalarField& w, double rho);

// beta = -cos(theta(t, .)) on the contact arcs; the compensating constant
// [sum_N cos(theta) dH] / [H(ring) - H(N)] elsewhere so the dx-weighted
// boundary sum vanishes identically. Throws when the arcs cover the whole
// ring; warns (returns flag) when the constant exceeds 1 in magnitude.
struct BuildBetaResult {
    BoundaryField beta;
    double compensation = 0.0;
    bool compensation_exceeds_one = false;
};
BuildBetaResult build_beta(const ContactAngleSpec& spec, const BoundaryArcs& arcs,
                           double t, const GridSpec& grid);

// Discrete capillary functional: forward-difference total variation (the
// last row/column contributes no variation) plus the dx-weighted boundary
// trace term  sum beta * u.
double capillary_energy(const ScalarField& u, const BoundaryField& beta);

// capillary_energy + (1/2h) sum (u - f)^2 dx^2.
double chambolle_energy(const ScalarField& u, const ScalarField& f,
                        const BoundaryField& beta, double h);

// Capillary Almgren-Taylor-Wang value of an indicator field F against the
// signed distance d of the reference set {d <= 0}:
//   C_beta(F) + lambda * sum_{F symdiff {d<=0}} |d| dx^2.
double atw_energy(const ScalarField& indicator, const SignedDistanceField& dist0,
                  const BoundaryField& beta, double lambda_atw);

}  // namespace capmcf
