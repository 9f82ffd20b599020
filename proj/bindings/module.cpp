#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capmcf/bregman.hpp"
#include "capmcf/capillary.hpp"
#include "capmcf/distance.hpp"
#include "capmcf/experiment.hpp"
#include "capmcf/geometry.hpp"
#include "capmcf/grid.hpp"
#include "capmcf/oracle.hpp"
#include "capmcf/scheme.hpp"

namespace py = pybind11;
using namespace capmcf;

namespace {

py::array_t<double> to_numpy(const ScalarField& f) {
    py::array_t<double> a({f.grid.n_y, f.grid.n_x});
    auto r = a.mutable_unchecked<2>();
    for (int i = 0; i < f.grid.n_y; ++i)
        for (int j = 0; j < f.grid.n_x; ++j)
            r(i, j) = f.values[static_cast<std::size_t>(i) * f.grid.n_x + j];
    return a;
}

ScalarField from_numpy(const GridSpec& g, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 2 || a.shape(0) != g.n_y || a.shape(1) != g.n_x)
        throw std::invalid_argument("field array must have shape (n_y, n_x)");
    ScalarField f(g);
    auto r = a.unchecked<2>();
    for (int i = 0; i < g.n_y; ++i)
        for (int j = 0; j < g.n_x; ++j)
            f.values[static_cast<std::size_t>(i) * g.n_x + j] = r(i, j);
    return f;
}

ShrinkVariant shrink_from_string(const std::string& s) {
    if (s == "paper") return ShrinkVariant::Paper;
    if (s == "standard") return ShrinkVariant::Standard;
    throw std::invalid_argument("shrink must be 'paper' or 'standard'");
}

SolverParams params_from_kwargs(double h, double lambda, double tol, int max_iters,
                                const std::string& shrink) {
    SolverParams p = SolverParams::for_time_step(h);
    p.lambda = lambda;
    p.tol = tol;
    p.max_iters = max_iters;
    p.shrink = shrink_from_string(shrink);
    return p;
}

}  // namespace

PYBIND11_MODULE(_capmcf, m) {
    m.doc() = "Capillary Chambolle scheme for mean curvature flow with "
              "prescribed contact angle";
    m.attr("__version__") = kToolVersion;

    py::class_<GridSpec>(m, "GridSpec")
        .def_readonly("alpha_x", &GridSpec::alpha_x)
        .def_readonly("beta_x", &GridSpec::beta_x)
        .def_readonly("alpha_y", &GridSpec::alpha_y)
        .def_readonly("beta_y", &GridSpec::beta_y)
        .def_readonly("n_x", &GridSpec::n_x)
        .def_readonly("n_y", &GridSpec::n_y)
        .def_readonly("dx", &GridSpec::dx)
        .def("x_of", &GridSpec::x_of)
        .def("y_of", &GridSpec::y_of)
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(" + std::to_string(g.n_x) + "x" + std::to_string(g.n_y) +
                   ", dx=" + std::to_string(g.dx) + ")";
        });

    m.def("make_grid", &make_grid, py::arg("alpha_x"), py::arg("beta_x"),
          py::arg("alpha_y"), py::arg("beta_y"), py::arg("n_x"), py::arg("n_y"));

    m.def("sign_grid",
          [](const std::vector<std::pair<double, double>>& vertices, const GridSpec& g) {
              Polygon poly;
              for (auto [x, y] : vertices) poly.vertices.push_back({x, y});
              return to_numpy(sign_grid(poly, g));
          },
          py::arg("polygon"), py::arg("grid"),
          "-1 inside the closed polygon, +1 outside");

    m.def("point_in_polygon",
          [](const std::vector<std::pair<double, double>>& vertices, double x, double y) {
              Polygon poly;
              for (auto [px, py_] : vertices) poly.vertices.push_back({px, py_});
              return point_in_polygon(poly, {x, y});
          },
          py::arg("polygon"), py::arg("x"), py::arg("y"));

    m.def("signed_distance",
          [](const GridSpec& g, py::array_t<double, py::array::c_style | py::array::forcecast> w) {
              return to_numpy(signed_distance(from_numpy(g, w)).d);
          },
          py::arg("grid"), py::arg("w"),
          "Fast-marched signed distance to the zero level of w (negative inside)");

    m.def("extract_zero_contour",
          [](const GridSpec& g, py::array_t<double, py::array::c_style | py::array::forcecast> w) {
              std::vector<std::vector<std::pair<double, double>>> out;
              for (const Polyline& line : extract_zero_contour(from_numpy(g, w))) {
                  std::vector<std::pair<double, double>> pl;
                  for (const Point& p : line) pl.emplace_back(p.x, p.y);
                  out.push_back(std::move(pl));
              }
              return out;
          },
          py::arg("grid"), py::arg("w"));

    m.def("solve_subproblem",
          [](const GridSpec& g, py::array_t<double, py::array::c_style | py::array::forcecast> f,
             std::tuple<double, double, double, double> beta_walls, double h,
             double lambda, double tol, int max_iters, const std::string& shrink) {
              const auto [l, r, b, t] = beta_walls;
              const BoundaryField beta = BoundaryField::from_walls(g, l, r, b, t);
              const SolverParams p = params_from_kwargs(h, lambda, tol, max_iters, shrink);
              const SolveResult res = solve_subproblem(from_numpy(g, f), beta, p);
              return py::make_tuple(to_numpy(res.u), res.iterations, res.residual,
                                    res.converged);
          },
          py::arg("grid"), py::arg("f"),
          py::arg("beta_walls") = std::tuple<double, double, double, double>{0, 0, 0, 0},
          py::arg("h"), py::arg("lambda_") = 1.0, py::arg("tol") = 1e-3,
          py::arg("max_iters") = 2000, py::arg("shrink") = "standard",
          "Split Bregman minimizer of the capillary Chambolle energy; returns "
          "(w, iterations, residual, converged)");

    m.def("evolve",
          [](const GridSpec& g, py::array_t<double, py::array::c_style | py::array::forcecast> w0,
             std::tuple<double, double, double, double> beta_walls, double h, double T,
             double lambda, double tol, int max_iters, const std::string& shrink) {
              const auto [l, r, b, t] = beta_walls;
              const BetaPolicy policy = BoundaryField::from_walls(g, l, r, b, t);
              const SolverParams p = params_from_kwargs(h, lambda, tol, max_iters, shrink);
              EvolutionState state = make_initial_state(from_numpy(g, w0), policy);
              RunOptions opts;
              opts.horizon = T;
              state = run(state, policy, p, opts);
              const char* status = state.status == EvolutionStatus::Running ? "ok"
                                   : state.status == EvolutionStatus::Extinct ? "extinct"
                                                                              : "full";
              return py::make_tuple(to_numpy(state.w), state.step_index, status);
          },
          py::arg("grid"), py::arg("w0"),
          py::arg("beta_walls") = std::tuple<double, double, double, double>{0, 0, 0, 0},
          py::arg("h"), py::arg("T"), py::arg("lambda_") = 1.0, py::arg("tol") = 1e-3,
          py::arg("max_iters") = 2000, py::arg("shrink") = "standard",
          "Run the outer scheme to horizon T with frozen wall weights; returns "
          "(w, steps, status)");

    m.def("capillary_energy",
          [](const GridSpec& g, py::array_t<double, py::array::c_style | py::array::forcecast> u,
             std::tuple<double, double, double, double> beta_walls) {
              const auto [l, r, b, t] = beta_walls;
              return capillary_energy(from_numpy(g, u),
                                      BoundaryField::from_walls(g, l, r, b, t));
          },
          py::arg("grid"), py::arg("u"),
          py::arg("beta_walls") = std::tuple<double, double, double, double>{0, 0, 0, 0});

    m.def("grim_reaper_profile", &oracle::grim_reaper_profile, py::arg("x"),
          py::arg("t"));
    m.def("grim_reaper_speed", [] { return oracle::grim_reaper_speed; });
    m.def("circle_radius",
          [](double r0, double t) -> py::object {
              const auto r = oracle::circle_radius(r0, t);
              if (!r) return py::none();
              return py::float_(*r);
          },
          py::arg("r0"), py::arg("t"));

    m.def("preset_names", &preset_names);
    m.def("run_preset",
          [](const std::string& name, const std::string& out_dir, int stride) {
              ExperimentConfig c = preset_config(name);
              c.out_dir = out_dir;
              if (stride > 0) c.stride = stride;
              const RunArtifacts art = run_experiment(c);
              return py::make_tuple(art.frames, art.status);
          },
          py::arg("name"), py::arg("out_dir"), py::arg("stride") = 0,
          "Run a named preset, writing contours.csv and manifest.json");
}
