#include <doctest.h>

#include <cmath>
#include <numbers>

#include "capmcf/capillary.hpp"

using namespace capmcf;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752;
}  // namespace

TEST_CASE("capillary_energy vanishes on the zero field") {
    const GridSpec g = make_grid(0, 1, 0, 1, 8, 8);
    CHECK(capillary_energy(ScalarField(g, 0.0), BoundaryField(g)) == 0.0);
}

TEST_CASE("capillary_energy of a constant vanishes under zero-sum beta") {
    const GridSpec g = make_grid(0, 1, 0, 1, 8, 8);
    BoundaryField beta(g);
    // alternate +1/-1 around the ring (even size), weighted sum zero
    for (int k = 0; k < beta.ring_size(); ++k) beta.values[k] = (k % 2) ? 1.0 : -1.0;
    REQUIRE(beta.weighted_sum() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(capillary_energy(ScalarField(g, 1.0), beta) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("capillary_energy of the left-half indicator is the interface length") {
    const GridSpec g = make_grid(0, 1, 0, 1, 32, 32);
    ScalarField u(g);
    for (int i = 1; i <= 32; ++i)
        for (int j = 1; j <= 32; ++j) u.at(i, j) = g.x_of(j) <= 0.5 ? 1.0 : 0.0;
    const double e = capillary_energy(u, BoundaryField(g));
    CHECK(std::abs(e - 1.0) <= g.dx + 1e-12);
    // with beta == 0 this equals the discrete TV exactly
}

TEST_CASE("chambolle_energy adds the quadratic fidelity") {
    const GridSpec g = make_grid(0, 1, 0, 1, 8, 8);
    const BoundaryField beta(g);
    const ScalarField f(g, 1.0);
    CHECK(chambolle_energy(f, f, beta, 0.5) ==
          doctest::Approx(capillary_energy(f, beta)));
    // u == 0, f == 1, h = 0.5 -> |Omega| = 1 (quadrature over the node cells)
    const ScalarField u(g, 0.0);
    CHECK(chambolle_energy(u, f, beta, 0.5) ==
          doctest::Approx(g.size() * g.dx * g.dx).epsilon(1e-12));
}

TEST_CASE("atw_energy reduces to the capillary term when F equals E0") {
    const GridSpec g = make_grid(-2, 2, -2, 2, 40, 40);
    SignedDistanceField d0;
    d0.d = ScalarField(g);
    ScalarField ind(g);
    for (int i = 1; i <= 40; ++i)
        for (int j = 1; j <= 40; ++j) {
            const double r = std::hypot(g.x_of(j), g.y_of(i)) - 1.0;
            d0.d.at(i, j) = r;
            ind.at(i, j) = r <= 0.0 ? 1.0 : 0.0;
        }
    const BoundaryField beta(g);
    CHECK(atw_energy(ind, d0, beta, 3.7) ==
          doctest::Approx(capillary_energy(ind, beta)).epsilon(1e-12));

    // F empty: only the distance term over E0 remains
    const ScalarField empty(g, 0.0);
    double expected = 0.0;
    for (double v : d0.d.values)
        if (v <= 0.0) expected += std::abs(v) * g.dx * g.dx;
    CHECK(atw_energy(empty, d0, beta, 2.0) ==
          doctest::Approx(2.0 * expected).epsilon(1e-12));
}

TEST_CASE("atw_energy difference is local to the symmetric difference") {
    const GridSpec g = make_grid(0, 1, 0, 1, 4, 4);
    SignedDistanceField d0;
    d0.d = ScalarField(g);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) d0.d.at(i, j) = (j <= 2) ? -1.0 : 1.0;
    ScalarField F(g);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) F.at(i, j) = (j <= 2) ? 1.0 : 0.0;
    ScalarField F2 = F;
    F2.at(2, 3) = 1.0;  // add one node outside E0
    const BoundaryField beta(g);
    const double base = atw_energy(F, d0, beta, 1.0);
    const double grown = atw_energy(F2, d0, beta, 1.0);
    // energy change = perimeter change + |d| at the flipped node
    const double dd = std::abs(d0.d.at(2, 3)) * g.dx * g.dx;
    CHECK(grown - base - dd ==
          doctest::Approx(capillary_energy(F2, beta) - capillary_energy(F, beta)));
}

TEST_CASE("4x4 atw_energy agrees with an independent per-term recomputation") {
    const GridSpec g = make_grid(0, 1, 0, 1, 4, 4);
    SignedDistanceField d0;
    d0.d = ScalarField(g);
    ScalarField F(g);
    int c = 0;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j, ++c) {
            d0.d.at(i, j) = (i + j) % 2 ? -(0.1 + 0.05 * c) : (0.2 + 0.03 * c);
            F.at(i, j) = (c % 3 == 0) ? 1.0 : 0.0;
        }
    BoundaryField beta(g);
    for (int k = 0; k < beta.ring_size(); ++k) beta.values[k] = 0.1 * (k % 4) - 0.15;
    const double lambda = 1.75;

    // Term-by-term recomputation, written independently of atw_energy.
    double tv = 0.0;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            const double fx = j < 4 ? (F.at(i, j + 1) - F.at(i, j)) / g.dx : 0.0;
            const double fy = i < 4 ? (F.at(i + 1, j) - F.at(i, j)) / g.dx : 0.0;
            tv += std::hypot(fx, fy) * g.dx * g.dx;
        }
    double bterm = 0.0;
    for (int k = 0; k < beta.ring_size(); ++k) {
        const auto [i, j] = beta.node(k);
        bterm += beta.values[k] * F.at(i, j) * g.dx;
    }
    double dterm = 0.0;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            const bool inF = F.at(i, j) != 0.0;
            const bool inE = d0.d.at(i, j) <= 0.0;
            if (inF != inE) dterm += std::abs(d0.d.at(i, j)) * g.dx * g.dx;
        }
    CHECK(atw_energy(F, d0, beta, lambda) ==
          doctest::Approx(tv + bterm + lambda * dterm).epsilon(1e-13));
}

TEST_CASE("detect_contact_arcs finds the two wall crossings of y - 0.5") {
    const GridSpec g = make_grid(0, 1, 0, 1, 20, 20);
    ScalarField w(g);
    for (int i = 1; i <= 20; ++i)
        for (int j = 1; j <= 20; ++j) w.at(i, j) = g.y_of(i) - 0.5;
    const BoundaryArcs arcs = detect_contact_arcs(w, 3 * g.dx);
    CHECK(arcs.crossings.size() == 2);
    int masked = 0;
    for (char m : arcs.mask) masked += m;
    CHECK(masked > 0);
    CHECK(masked < static_cast<int>(arcs.mask.size()));
}

TEST_CASE("detect_contact_arcs is empty for an interior disk") {
    const GridSpec g = make_grid(-2, 2, -2, 2, 40, 40);
    ScalarField w(g);
    for (int i = 1; i <= 40; ++i)
        for (int j = 1; j <= 40; ++j)
            w.at(i, j) = std::hypot(g.x_of(j), g.y_of(i)) - 1.0;
    const BoundaryArcs arcs = detect_contact_arcs(w, 3 * g.dx);
    CHECK(arcs.crossings.empty());
    for (char m : arcs.mask) CHECK(m == 0);
}

TEST_CASE("build_beta: right angle gives zero weights") {
    const GridSpec g = make_grid(0, 1, 0, 1, 10, 10);
    ContactAngleSpec spec;
    spec.theta = [](double, double) { return kPi / 2.0; };
    spec.rho = 3 * g.dx;
    BoundaryArcs arcs;
    arcs.mask.assign(BoundaryField::ring_size(g), 0);
    for (int k = 0; k < 5; ++k) arcs.mask[k] = 1;
    const BuildBetaResult r = build_beta(spec, arcs, 0.0, g);
    for (double v : r.beta.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.beta.weighted_sum() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("build_beta: pi/4 arcs compensated on the complement") {
    // Ring measure 6, arc measure 1, theta = pi/4: beta = -1/sqrt(2) on the
    // arc and +(1/sqrt(2))/5 elsewhere.
    const GridSpec g = make_grid(0, 2, 0, 1, 24, 12);  // ring length 6 - 4dx
    ContactAngleSpec spec;
    spec.theta = [](double, double) { return kPi / 4.0; };
    BoundaryArcs arcs;
    const int R = BoundaryField::ring_size(g);
    arcs.mask.assign(R, 0);
    const int n_arc = static_cast<int>(std::lround(1.0 / g.dx));
    for (int k = 0; k < n_arc; ++k) arcs.mask[k] = 1;
    const BuildBetaResult r = build_beta(spec, arcs, 0.0, g);
    const double measure_N = n_arc * g.dx;
    const double measure_rest = (R - n_arc) * g.dx;
    const double expected_comp = kInvSqrt2 * measure_N / measure_rest;
    CHECK(r.compensation == doctest::Approx(expected_comp).epsilon(1e-12));
    for (int k = 0; k < R; ++k)
        CHECK(r.beta.values[k] ==
              doctest::Approx(k < n_arc ? -kInvSqrt2 : expected_comp).epsilon(1e-12));
    CHECK(r.beta.weighted_sum() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(r.compensation_exceeds_one);
}

TEST_CASE("build_beta rejects arcs covering the whole ring") {
    const GridSpec g = make_grid(0, 1, 0, 1, 6, 6);
    ContactAngleSpec spec;
    spec.theta = [](double, double) { return kPi / 4.0; };
    BoundaryArcs arcs;
    arcs.mask.assign(BoundaryField::ring_size(g), 1);
    CHECK_THROWS(build_beta(spec, arcs, 0.0, g));
}

TEST_CASE("build_beta flags compensation constants above 1") {
    const GridSpec g = make_grid(0, 1, 0, 1, 10, 10);
    ContactAngleSpec spec;
    spec.theta = [](double, double) { return kPi; };  // cos = -1 on the arcs
    BoundaryArcs arcs;
    const int R = BoundaryField::ring_size(g);
    arcs.mask.assign(R, 1);
    arcs.mask[0] = 0;  // a single free node must absorb the whole integral
    const BuildBetaResult r = build_beta(spec, arcs, 0.0, g);
    CHECK(r.compensation_exceeds_one);
    CHECK(r.beta.weighted_sum() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("soliton wall weights have zero continuum sum") {
    // left/right walls carry -1/sqrt(2) over height 1 each, the bottom
    // +1/sqrt(2) over width 2: (-1/sqrt2)*2 + (1/sqrt2)*2 = 0.
    const double s = (-kInvSqrt2) * 1.0 * 2 + kInvSqrt2 * 2.0 + 0.0;
    CHECK(s == doctest::Approx(0.0).epsilon(1e-15));
}
