#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kf/calculus.hpp"
#include "kf/errors.hpp"
#include "kf/experiments.hpp"
#include "kf/grid.hpp"
#include "kf/io.hpp"
#include "kf/measure.hpp"
#include "kf/quadrature.hpp"
#include "kf/resolvent.hpp"
#include "kf/semigroup.hpp"
#include "kf/spectral.hpp"

namespace py = pybind11;
using namespace kf;

namespace {

GridPtr to_grid(const std::optional<std::vector<double>>& pts) {
    if (!pts) return nullptr;
    return make_grid_points(*pts);
}

std::string csv_string(const ExperimentReport& r) {
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

std::string svg_string(const ExperimentReport& r) {
    std::ostringstream os;
    write_svg(r, os);
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_kreinfeller, mod) {
    mod.doc() = "Krein-Feller operators d/dmu d/dx on [0,1]";

    py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(mod, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<InvariantViolation>(mod, "InvariantViolation", PyExc_RuntimeError);

    py::enum_<Boundary>(mod, "Boundary")
        .value("Neumann", Boundary::Neumann)
        .value("Dirichlet", Boundary::Dirichlet);

    py::enum_<SemigroupMethod>(mod, "SemigroupMethod")
        .value("Eigen", SemigroupMethod::Eigen)
        .value("BackwardEuler", SemigroupMethod::BackwardEuler);

    py::class_<Gap>(mod, "Gap")
        .def_readonly("lo", &Gap::lo)
        .def_readonly("hi", &Gap::hi)
        .def("width", &Gap::width);

    py::class_<Measure>(mod, "Measure")
        .def_static("lebesgue", &Measure::lebesgue)
        .def_static("cantor", &Measure::cantor, py::arg("w1"), py::arg("w2"))
        .def_static("cantor_approx", &Measure::cantor_approx, py::arg("w1"), py::arg("w2"),
                    py::arg("level"))
        .def_static("mixture", &Measure::mixture, py::arg("base"), py::arg("epsilon"))
        .def_static("tabulated", &Measure::tabulated, py::arg("samples"))
        .def("cdf", &Measure::cdf, py::arg("x"))
        .def("quantile", &Measure::quantile, py::arg("p"))
        .def("mass", &Measure::mass, py::arg("a"), py::arg("b"))
        .def("support_gaps", &Measure::support_gaps, py::arg("resolution"))
        .def("reflected", &Measure::reflected)
        .def("has_density", &Measure::has_density)
        .def("describe", &Measure::describe)
        .def("__repr__", &Measure::describe);

    mod.def("cdf_distance", &cdf_distance, py::arg("m1"), py::arg("m2"));

    py::class_<GridFunction>(mod, "GridFunction")
        .def(py::init([](std::vector<double> pts, std::vector<double> vals) {
                 return GridFunction(make_grid_points(std::move(pts)), std::move(vals));
             }),
             py::arg("points"), py::arg("values"))
        .def("__call__", &GridFunction::operator(), py::arg("x"))
        .def_property_readonly("points", [](const GridFunction& f) { return *f.grid(); })
        .def_property_readonly(
            "values", [](const GridFunction& f) { return f.values(); })
        .def("sup_norm", &GridFunction::sup_norm)
        .def("__len__", &GridFunction::size);

    mod.def("sup_distance", &sup_distance, py::arg("f"), py::arg("g"));
    mod.def(
        "uniform_grid", [](std::size_t n) { return *uniform_grid(n); }, py::arg("n"));
    mod.def(
        "make_grid", [](const Measure& m, std::size_t n) { return *make_grid(m, n); },
        py::arg("measure"), py::arg("n"));

    mod.def(
        "integrate",
        [](const Measure& m, const GridFunction& f, double a, double b, double tol) {
            return integrate(m, f, a, b, tol);
        },
        py::arg("measure"), py::arg("f"), py::arg("a") = 0.0, py::arg("b") = 1.0,
        py::arg("tol") = 1e-10);

    py::class_<MonomialTable>(mod, "MonomialTable")
        .def_readonly("max_order", &MonomialTable::max_order)
        .def_readonly("p", &MonomialTable::p)
        .def_readonly("q", &MonomialTable::q)
        .def_property_readonly("points", [](const MonomialTable& t) { return *t.grid; });

    mod.def(
        "monomial_table",
        [](const Measure& m, int max_order, const std::optional<std::vector<double>>& grid) {
            return monomial_table(m, max_order, grid ? to_grid(grid) : make_grid(m, 1025));
        },
        py::arg("measure"), py::arg("max_order"), py::arg("grid") = py::none());

    mod.def("truncation_order", &truncation_order, py::arg("z"), py::arg("tol"));

    py::class_<HyperbolicFunctions>(mod, "HyperbolicFunctions")
        .def_readonly("z", &HyperbolicFunctions::z)
        .def_readonly("order", &HyperbolicFunctions::order)
        .def_readonly("tail_bound", &HyperbolicFunctions::tail_bound)
        .def_readonly("cosh_z", &HyperbolicFunctions::cosh_z)
        .def_readonly("sinh_z", &HyperbolicFunctions::sinh_z)
        .def_readonly("dcosh_z", &HyperbolicFunctions::dcosh_z)
        .def_readonly("dsinh_z", &HyperbolicFunctions::dsinh_z);

    mod.def(
        "hyperbolic",
        [](const Measure& m, double z, const std::optional<std::vector<double>>& grid,
           double tol) {
            return hyperbolic(m, z, grid ? to_grid(grid) : make_grid(m, 1025), tol);
        },
        py::arg("measure"), py::arg("z"), py::arg("grid") = py::none(), py::arg("tol") = 1e-12);

    py::class_<TrigFunctions>(mod, "TrigFunctions")
        .def_readonly("z", &TrigFunctions::z)
        .def_readonly("order", &TrigFunctions::order)
        .def_readonly("tail_bound", &TrigFunctions::tail_bound)
        .def_readonly("cos_z", &TrigFunctions::cos_z)
        .def_readonly("sin_z", &TrigFunctions::sin_z)
        .def_readonly("dcos_z", &TrigFunctions::dcos_z)
        .def_readonly("dsin_z", &TrigFunctions::dsin_z);

    mod.def(
        "trig",
        [](const Measure& m, double z, const std::optional<std::vector<double>>& grid,
           double tol) {
            return trig(m, z, grid ? to_grid(grid) : make_grid(m, 1025), tol);
        },
        py::arg("measure"), py::arg("z"), py::arg("grid") = py::none(), py::arg("tol") = 1e-12);

    mod.def(
        "apply_krein_feller",
        [](const Measure& m, const GridFunction& f, double h) {
            auto s = apply_krein_feller(m, f, h);
            return py::make_tuple(s.x, s.value);
        },
        py::arg("measure"), py::arg("f"), py::arg("h") = 1e-3);

    py::class_<ResolventDensity>(mod, "ResolventDensity")
        .def("__call__", &ResolventDensity::operator(), py::arg("x"), py::arg("y"))
        .def_readonly("bc", &ResolventDensity::bc)
        .def_readonly("lam", &ResolventDensity::lambda)
        .def_readonly("normalizer", &ResolventDensity::normalizer);

    mod.def(
        "resolvent_density",
        [](const Measure& m, Boundary bc, double lam,
           const std::optional<std::vector<double>>& grid) {
            return resolvent_density(m, bc, lam, to_grid(grid));
        },
        py::arg("measure"), py::arg("bc"), py::arg("lam"), py::arg("grid") = py::none());

    mod.def(
        "apply_resolvent",
        [](const Measure& m, Boundary bc, double lam, const GridFunction& f,
           const std::optional<std::vector<double>>& grid) {
            return apply_resolvent(m, bc, lam, f, to_grid(grid));
        },
        py::arg("measure"), py::arg("bc"), py::arg("lam"), py::arg("f"),
        py::arg("grid") = py::none());

    mod.def("verify_resolvent", &verify_resolvent, py::arg("measure"), py::arg("bc"),
            py::arg("lam"), py::arg("f"), py::arg("u"));
    mod.def("resolvent_error_bound", &resolvent_error_bound, py::arg("lam"), py::arg("bc"),
            py::arg("cdf_dist"));

    py::class_<SpectralDecomposition>(mod, "SpectralDecomposition")
        .def_readonly("bc", &SpectralDecomposition::bc)
        .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
        .def_readonly("eigenfunctions", &SpectralDecomposition::eigenfunctions)
        .def("count", &SpectralDecomposition::count);

    mod.def(
        "eigen_shooting",
        [](const Measure& m, Boundary bc, int count, double tol,
           const std::optional<std::vector<double>>& grid) {
            return eigen_shooting(m, bc, count, tol, to_grid(grid));
        },
        py::arg("measure"), py::arg("bc"), py::arg("count"), py::arg("tol") = 1e-10,
        py::arg("grid") = py::none());
    mod.def("eigen_matrix_oracle", &eigen_matrix_oracle, py::arg("measure"), py::arg("bc"),
            py::arg("atoms"), py::arg("count"));
    mod.def("orthonormality_defect", &orthonormality_defect, py::arg("decomposition"));

    py::class_<HeatKernel>(mod, "HeatKernel")
        .def_readonly("bc", &HeatKernel::bc)
        .def_readonly("t", &HeatKernel::t)
        .def_readonly("terms", &HeatKernel::terms)
        .def_readonly("values", &HeatKernel::values)
        .def_readonly("truncation_estimate", &HeatKernel::truncation_estimate)
        .def_property_readonly("points", [](const HeatKernel& k) { return *k.grid; });

    mod.def(
        "heat_kernel",
        [](const Measure& m, Boundary bc, double t, double tol,
           const std::optional<std::vector<double>>& grid) {
            return heat_kernel(m, bc, t, tol, to_grid(grid));
        },
        py::arg("measure"), py::arg("bc"), py::arg("t"), py::arg("tol") = 1e-8,
        py::arg("grid") = py::none());

    mod.def(
        "apply_semigroup",
        [](const Measure& m, Boundary bc, double t, const GridFunction& f, SemigroupMethod method,
           int steps, double tol, const std::optional<std::vector<double>>& grid) {
            return apply_semigroup(m, bc, t, f, method, steps, tol, to_grid(grid));
        },
        py::arg("measure"), py::arg("bc"), py::arg("t"), py::arg("f"),
        py::arg("method") = SemigroupMethod::Eigen, py::arg("steps") = 32, py::arg("tol") = 1e-8,
        py::arg("grid") = py::none());

    py::class_<HeatSolution>(mod, "HeatSolution")
        .def_readonly("bc", &HeatSolution::bc)
        .def_readonly("times", &HeatSolution::times)
        .def_readonly("states", &HeatSolution::states)
        .def_readonly("initial", &HeatSolution::initial);

    mod.def(
        "solve_heat",
        [](const Measure& m, Boundary bc, const GridFunction& f, std::vector<double> times,
           double tol, const std::optional<std::vector<double>>& grid) {
            return solve_heat(m, bc, f, std::move(times), tol, to_grid(grid));
        },
        py::arg("measure"), py::arg("bc"), py::arg("f"), py::arg("times"), py::arg("tol") = 1e-8,
        py::arg("grid") = py::none());

    py::enum_<FamilyKind>(mod, "FamilyKind")
        .value("CantorLevels", FamilyKind::CantorLevels)
        .value("EpsilonMixture", FamilyKind::EpsilonMixture)
        .value("Composed", FamilyKind::Composed);

    py::class_<FamilySpec>(mod, "FamilySpec")
        .def(py::init<>())
        .def_readwrite("kind", &FamilySpec::kind)
        .def_readwrite("w1", &FamilySpec::w1)
        .def_readwrite("w2", &FamilySpec::w2)
        .def_readwrite("levels", &FamilySpec::levels)
        .def_readwrite("epsilons", &FamilySpec::epsilons)
        .def_readwrite("base", &FamilySpec::base);

    py::class_<MeasureFamily>(mod, "MeasureFamily")
        .def_readonly("limit", &MeasureFamily::limit)
        .def_readonly("approximants", &MeasureFamily::approximants)
        .def_readonly("labels", &MeasureFamily::labels);

    mod.def("build_family", &build_family, py::arg("spec"));
    mod.def("embed", &embed, py::arg("f"), py::arg("from_measure"), py::arg("to_measure"));

    py::class_<ExperimentRow>(mod, "ExperimentRow")
        .def_readonly("label", &ExperimentRow::label)
        .def_readonly("cdf_dist", &ExperimentRow::cdf_dist)
        .def_readonly("error_sup", &ExperimentRow::error_sup)
        .def_readonly("theory_bound", &ExperimentRow::theory_bound)
        .def_readonly("runtime_s", &ExperimentRow::runtime_s)
        .def_readonly("density_sup", &ExperimentRow::density_sup)
        .def_readonly("per_time", &ExperimentRow::per_time);

    py::class_<ExperimentReport>(mod, "ExperimentReport")
        .def_readonly("bc", &ExperimentReport::bc)
        .def_readonly("lam", &ExperimentReport::lambda)
        .def_readonly("times", &ExperimentReport::times)
        .def_readonly("rhs", &ExperimentReport::rhs)
        .def_readonly("rows", &ExperimentReport::rows)
        .def("to_csv", &csv_string)
        .def("to_svg", &svg_string);

    mod.def("resolvent_convergence", &resolvent_convergence, py::arg("family"), py::arg("lam"),
            py::arg("bc"), py::arg("f"), py::arg("timing") = false);
    mod.def("graph_norm_convergence", &graph_norm_convergence, py::arg("family"), py::arg("lam"),
            py::arg("bc"), py::arg("g"), py::arg("timing") = false);
    mod.def("semigroup_convergence", &semigroup_convergence, py::arg("family"), py::arg("times"),
            py::arg("bc"), py::arg("f"), py::arg("timing") = false);
    mod.def("composed_limit_demo", &composed_limit_demo, py::arg("t"), py::arg("delta"),
            py::arg("bc"), py::arg("f"), py::arg("w1") = 0.5, py::arg("w2") = 0.5,
            py::arg("timing") = false);

    mod.def(
        "rhs_from_descriptor",
        [](const std::string& desc, const std::vector<double>& pts) {
            return rhs_from_descriptor(desc, make_grid_points(pts));
        },
        py::arg("descriptor"), py::arg("points"));
}
