#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "capmcf/grid.hpp"

using namespace capmcf;

TEST_CASE("make_grid computes the square-cell spacing") {
    const GridSpec a = make_grid(0, 2, 0, 1, 800, 400);
    CHECK(a.dx == doctest::Approx(0.0025).epsilon(1e-15));
    const GridSpec b = make_grid(-5, 5, -5, 5, 500, 500);
    CHECK(b.dx == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(b.x_of(1) == doctest::Approx(-5 + 0.02));
    CHECK(b.x_of(500) == doctest::Approx(5.0));
}

TEST_CASE("make_grid rejects non-square cells naming both spacings") {
    try {
        make_grid(0, 1, 0, 1, 10, 20);
        FAIL("expected a configuration error");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("0.1") != std::string::npos);
        CHECK(msg.find("0.05") != std::string::npos);
    }
    CHECK_THROWS_AS(make_grid(1, 0, 0, 1, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0, 1, 0, 1, 2, 2), std::invalid_argument);
}

TEST_CASE("central_gradient on constant and affine fields") {
    const GridSpec g = make_grid(0, 1, 0, 1, 16, 16);
    ScalarField c(g, 7.0);
    auto [cgx, cgy] = central_gradient(c);
    for (double v : cgx.values) CHECK(v == 0.0);
    for (double v : cgy.values) CHECK(v == 0.0);

    ScalarField lin(g);
    for (int i = 1; i <= 16; ++i)
        for (int j = 1; j <= 16; ++j) lin.at(i, j) = g.x_of(j);
    auto [lgx, lgy] = central_gradient(lin);
    for (int i = 2; i <= 15; ++i)
        for (int j = 2; j <= 15; ++j) {
            CHECK(lgx.at(i, j) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(lgy.at(i, j) == doctest::Approx(0.0).epsilon(1e-12));
        }
}

TEST_CASE("central_gradient is exact for quadratics in the interior") {
    // Central difference of x^2: ((x+h)^2 - (x-h)^2)/(2h) = 2x exactly.
    const GridSpec g = make_grid(0, 1, 0, 1, 12, 12);
    ScalarField q(g);
    for (int i = 1; i <= 12; ++i)
        for (int j = 1; j <= 12; ++j) q.at(i, j) = g.x_of(j) * g.x_of(j);
    auto [gx, gy] = central_gradient(q);
    for (int i = 2; i <= 11; ++i)
        for (int j = 2; j <= 11; ++j)
            CHECK(gx.at(i, j) == doctest::Approx(2.0 * g.x_of(j)).epsilon(1e-12));
}

TEST_CASE("central_gradient is linear") {
    const GridSpec g = make_grid(0, 1, 0, 1, 9, 9);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1, 1);
    ScalarField u(g), v(g);
    for (auto& x : u.values) x = dist(rng);
    for (auto& x : v.values) x = dist(rng);
    const double a = 1.7, b = -0.4;
    ScalarField comb(g);
    for (std::size_t k = 0; k < comb.values.size(); ++k)
        comb.values[k] = a * u.values[k] + b * v.values[k];
    auto [ugx, ugy] = central_gradient(u);
    auto [vgx, vgy] = central_gradient(v);
    auto [cgx, cgy] = central_gradient(comb);
    for (std::size_t k = 0; k < comb.values.size(); ++k) {
        CHECK(cgx.values[k] ==
              doctest::Approx(a * ugx.values[k] + b * vgx.values[k]).epsilon(1e-12));
        CHECK(cgy.values[k] ==
              doctest::Approx(a * ugy.values[k] + b * vgy.values[k]).epsilon(1e-12));
    }
}

TEST_CASE("field dump round-trips at full precision") {
    const GridSpec g = make_grid(0, 1, 0, 0.5, 8, 4);
    ScalarField u(g);
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (auto& x : u.values) x = dist(rng) * std::exp(dist(rng) * 20.0);
    std::stringstream ss;
    dump_field(u, ss);
    std::string header;
    std::getline(ss, header);
    CHECK(header.substr(0, 4) == "4 8 ");
    ss.seekg(0);
    const ScalarField back = load_field(ss);
    REQUIRE(back.values.size() == u.values.size());
    for (std::size_t k = 0; k < u.values.size(); ++k)
        CHECK(back.values[k] == u.values[k]);
    CHECK(back.grid.dx == u.grid.dx);
}
