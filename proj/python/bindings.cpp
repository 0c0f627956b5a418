#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "burgers1d/asymptotics.hpp"
#include "burgers1d/core.hpp"
#include "burgers1d/discretization.hpp"
#include "burgers1d/evolution.hpp"
#include "burgers1d/spectrum.hpp"

namespace py = pybind11;
using namespace burgers1d;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Boundary-layer equilibria, spectra, and metastable dynamics of the viscous "
              "Burgers equation on [-1, 1]";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<Grid>(m, "Grid")
        .def_readonly("a", &Grid::a)
        .def_readonly("b", &Grid::b)
        .def_readonly("n", &Grid::n)
        .def_readonly("dx", &Grid::dx)
        .def("node", &Grid::node)
        .def("nodes", &Grid::nodes)
        .def("__repr__", [](const Grid& g) {
            return "Grid(a=" + std::to_string(g.a) + ", b=" + std::to_string(g.b) +
                   ", n=" + std::to_string(g.n) + ")";
        });

    py::class_<BoundaryPair>(m, "BoundaryPair")
        .def(py::init<double, double>(), py::arg("alpha"), py::arg("beta"))
        .def_readonly("alpha", &BoundaryPair::alpha)
        .def_readonly("beta", &BoundaryPair::beta);

    py::class_<Field>(m, "Field")
        .def(py::init<Grid, std::vector<double>>(), py::arg("grid"), py::arg("values"))
        .def_readonly("grid", &Field::grid)
        .def_readonly("values", &Field::values)
        .def("__len__", &Field::size);

    py::class_<CompositeProfile>(m, "CompositeProfile")
        .def_readonly("alpha", &CompositeProfile::alpha)
        .def_readonly("k", &CompositeProfile::k)
        .def_readonly("eps", &CompositeProfile::eps)
        .def("value", &CompositeProfile::value)
        .def("deriv", &CompositeProfile::deriv)
        .def("deriv2", &CompositeProfile::deriv2)
        .def("sample", &CompositeProfile::sample);

    py::class_<MatchReport>(m, "MatchReport")
        .def_readonly("inner_limit_left", &MatchReport::inner_limit_left)
        .def_readonly("inner_limit_right", &MatchReport::inner_limit_right)
        .def_readonly("outer_left", &MatchReport::outer_left)
        .def_readonly("outer_right", &MatchReport::outer_right)
        .def_readonly("max_defect", &MatchReport::max_defect);

    py::class_<L2BoundCheck>(m, "L2BoundCheck")
        .def_readonly("norm_sq", &L2BoundCheck::norm_sq)
        .def_readonly("bound", &L2BoundCheck::bound);

    py::class_<SteadyResult>(m, "SteadyResult")
        .def_readonly("u", &SteadyResult::u)
        .def_readonly("iterations", &SteadyResult::iterations)
        .def_readonly("residual_history", &SteadyResult::residual_history);

    py::class_<SpectrumResult>(m, "SpectrumResult")
        .def_readonly("eigenvalues", &SpectrumResult::eigenvalues)
        .def_readonly("eigenfunctions", &SpectrumResult::eigenfunctions)
        .def_readonly("weight", &SpectrumResult::weight)
        .def_readonly("eps", &SpectrumResult::eps);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("deviations", &Trajectory::deviations)
        .def_readonly("reference_norm", &Trajectory::reference_norm)
        .def_readonly("snapshot_times", &Trajectory::snapshot_times)
        .def_readonly("snapshots", &Trajectory::snapshots);

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("lambda_est", &DecayFit::lambda_est)
        .def_readonly("intercept", &DecayFit::intercept)
        .def_readonly("r_squared", &DecayFit::r_squared)
        .def_readonly("t_lo", &DecayFit::t_lo)
        .def_readonly("t_hi", &DecayFit::t_hi);

    py::class_<BoundednessReport>(m, "BoundednessReport")
        .def_readonly("passed", &BoundednessReport::passed)
        .def_readonly("max_norm_sq", &BoundednessReport::max_norm_sq)
        .def_readonly("bound", &BoundednessReport::bound);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("eps", &SweepRow::eps)
        .def_readonly("lambdas", &SweepRow::lambdas)
        .def_readonly("status", &SweepRow::status);

    py::class_<LineFit>(m, "LineFit")
        .def_readonly("slope", &LineFit::slope)
        .def_readonly("intercept", &LineFit::intercept)
        .def_readonly("r_squared", &LineFit::r_squared)
        .def_readonly("count", &LineFit::count);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("fit", &SweepResult::fit)
        .def_readonly("fit_valid", &SweepResult::fit_valid)
        .def_readonly("note", &SweepResult::note);

    m.def("make_grid", &make_grid, py::arg("a"), py::arg("b"), py::arg("n"));
    m.def("validate_bc", &validate_bc, py::arg("alpha"), py::arg("beta"));
    m.def("l2_norm", &l2_norm);
    m.def("integrate", &integrate);
    m.def("integrate_squared", &integrate_squared);

    m.def("composite", &composite, py::arg("alpha"), py::arg("k"), py::arg("eps"));
    m.def("outer_solutions", &outer_solutions);
    m.def("inner_solution", &inner_solution, py::arg("alpha"), py::arg("k"), py::arg("s"));
    m.def("matching_check", &matching_check, py::arg("profile"), py::arg("s_max"));
    m.def("stationary_residual", &stationary_residual, py::arg("profile"), py::arg("grid"));
    m.def("boundary_mismatch", &boundary_mismatch);
    m.def("l2_bound_check", &l2_bound_check, py::arg("profile"), py::arg("grid"));

    m.def("steady_residual", &steady_residual, py::arg("u"), py::arg("eps"), py::arg("bc"));
    m.def("newton_solve_steady", &newton_solve_steady, py::arg("eps"), py::arg("bc"),
          py::arg("u0"), py::arg("tol") = 1e-10, py::arg("max_iter") = 25);
    m.def("default_resolution", &default_resolution);

    py::enum_<EquilibriumSource>(m, "EquilibriumSource")
        .value("composite", EquilibriumSource::composite)
        .value("newton_steady", EquilibriumSource::newton_steady);

    m.def("symmetrization_weight", &symmetrization_weight, py::arg("profile"), py::arg("grid"));
    m.def("linearized_spectrum", &linearized_spectrum, py::arg("profile"), py::arg("grid"),
          py::arg("m"), py::arg("source") = EquilibriumSource::composite,
          py::arg("allow_small_eps") = false);
    m.def("turning_point_model", &turning_point_model, py::arg("eps"), py::arg("grid"),
          py::arg("m"), py::arg("allow_small_eps") = false);
    m.def(
        "metastability_sweep",
        [](double alpha, const std::vector<double>& eps_list, int m, int jobs,
           bool allow_small_eps) {
            return metastability_sweep(alpha, eps_list, m, jobs, allow_small_eps);
        },
        py::arg("alpha"), py::arg("eps_list"), py::arg("m"), py::arg("jobs") = 1,
        py::arg("allow_small_eps") = false);

    m.def("perturbed_initial", &perturbed_initial, py::arg("profile"), py::arg("phi"),
          py::arg("nu"), py::arg("grid"));
    m.def("step_implicit", &step_implicit, py::arg("u"), py::arg("dt"), py::arg("eps"),
          py::arg("bc"));
    m.def("evolve", &evolve, py::arg("u0"), py::arg("t_end"), py::arg("dt"), py::arg("eps"),
          py::arg("bc"), py::arg("sample_every") = 10,
          py::arg("reference") = std::optional<Field>(), py::arg("keep_snapshots") = false);
    m.def("fit_decay", &fit_decay);
    m.def("boundedness_check", &boundedness_check, py::arg("trajectory"), py::arg("profile"),
          py::arg("nu"), py::arg("M"));
    m.def("bound_constant", &bound_constant, py::arg("phi"), py::arg("nu"));

    m.attr("EPS_PRECISION_FLOOR") = kEpsPrecisionFloor;
    m.attr("__version__") = "0.1.0";
}
