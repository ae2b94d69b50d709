#include "roughhj/acceptance.hpp"
#include "roughhj/catalog.hpp"
#include "roughhj/characteristics.hpp"
#include "roughhj/convex.hpp"
#include "roughhj/scheme.hpp"
#include "roughhj/scl.hpp"
#include "roughhj/semigroup.hpp"
#include "roughhj/semilinear.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace roughhj;

namespace {

PathKind kind_from_string(const std::string& k) {
    if (k == "brownian")
        return PathKind::Brownian;
    if (k == "sawtooth")
        return PathKind::Sawtooth;
    if (k == "linear")
        return PathKind::Linear;
    if (k == "hoelder")
        return PathKind::Hoelder;
    throw std::invalid_argument("unknown path kind '" + k + "'");
}

} // namespace

PYBIND11_MODULE(_roughhj, m) {
    m.doc() = "pathwise Hamilton-Jacobi equations and conservation laws with rough signals";

    py::class_<Path>(m, "Path")
        .def(py::init([](std::vector<double> ts, std::vector<double> vs) {
                 return Path::scalar(std::move(ts), std::move(vs));
             }),
             py::arg("times"), py::arg("values"))
        .def_static("zero", &Path::zero, py::arg("horizon"))
        .def("eval", py::overload_cast<double>(&Path::eval, py::const_), py::arg("t"))
        .def("running_extrema",
             py::overload_cast<double>(&Path::running_extrema, py::const_), py::arg("t"))
        .def("total_variation",
             py::overload_cast<double, double>(&Path::total_variation, py::const_),
             py::arg("a"), py::arg("b"))
        .def_property_readonly("horizon", &Path::horizon)
        .def_property_readonly("times", [](const Path& p) { return p.times(); })
        .def_property_readonly("values", [](const Path& p) { return p.component(0); })
        .def("__len__", &Path::knot_count);

    m.def("sample_path",
          [](std::uint64_t seed, double T, int n, const std::string& kind, double mu,
             double slope, double alpha) {
              PathEnsembleSpec s;
              s.seed = seed;
              s.horizon = T;
              s.resolution = n;
              s.kind = kind_from_string(kind);
              s.mu = mu;
              s.slope = slope;
              s.alpha = alpha;
              return sample_path(s);
          },
          py::arg("seed") = 0, py::arg("T") = 1.0, py::arg("n") = 1024,
          py::arg("kind") = "brownian", py::arg("mu") = 1.0, py::arg("slope") = 1.0,
          py::arg("alpha") = 0.5);
    m.def("reduce_path", &reduce_path);
    m.def("fully_reduce_path", &fully_reduce_path);
    m.def("mollify", &mollify, py::arg("path"), py::arg("eps"));
    m.def("interpolate", &interpolate, py::arg("path"), py::arg("delta"));

    py::class_<GridFn>(m, "GridFn")
        .def(py::init([](double origin, double step, std::vector<double> values,
                         bool periodic) {
                 return GridFn(origin, step, std::move(values),
                               periodic ? Boundary::Periodic : Boundary::LinearExtension);
             }),
             py::arg("origin"), py::arg("step"), py::arg("values"),
             py::arg("periodic") = false)
        .def_property_readonly("origin", &GridFn::origin)
        .def_property_readonly("step", &GridFn::step)
        .def_property_readonly("values", [](const GridFn& g) { return g.values(); })
        .def("x", &GridFn::x)
        .def("eval", &GridFn::eval)
        .def("lipschitz", &GridFn::lipschitz)
        .def("__len__", &GridFn::size);

    py::class_<Hamiltonian>(m, "Hamiltonian")
        .def_static("abs", &Hamiltonian::abs)
        .def_static("neg_abs", &Hamiltonian::neg_abs)
        .def_static("quadratic", &Hamiltonian::quadratic, py::arg("a"))
        .def_static("power", &Hamiltonian::power, py::arg("theta"))
        .def("eval", &Hamiltonian::eval)
        .def("describe", &Hamiltonian::describe)
        .def_property_readonly("convex", &Hamiltonian::is_convex);

    m.def("catalog_hamiltonian", &catalog_hamiltonian);

    m.def("legendre", [](const GridFn& f) { return legendre(f); });
    m.def("legendre_on",
          [](const GridFn& f, double qmin, double qmax, int nq) {
              return legendre(f, qmin, qmax, nq);
          },
          py::arg("f"), py::arg("qmin"), py::arg("qmax"), py::arg("nq"));
    m.def("convex_envelope", &convex_envelope);
    m.def("hopf_solve", &hopf_solve, py::arg("H"), py::arg("u0"), py::arg("t"));
    m.def("lax_oleinik_solve", &lax_oleinik_solve, py::arg("H"), py::arg("u0"), py::arg("t"));
    m.def("hopf_iterate",
          [](const Hamiltonian& H, double delta, int steps) {
              auto r = hopf_iterate(H, delta, steps);
              return py::make_tuple(r.neg_inf, r.blew_up);
          },
          py::arg("H"), py::arg("delta"), py::arg("steps"));

    m.def("solve_exact",
          [](const Hamiltonian& H, const Path& path, const GridFn& u0, double T) {
              PathwiseSolveSpec spec{{H}, path, u0, T};
              return solve_exact(spec);
          },
          py::arg("H"), py::arg("path"), py::arg("u0"), py::arg("T"));
    m.def("oracle_abs", &oracle_abs, py::arg("path"), py::arg("x"), py::arg("t"));
    m.def("cancellation_check",
          [](const Hamiltonian& H, const GridFn& u0, double a) {
              auto g = cancellation_check(H, u0, a);
              return py::make_tuple(g.lhs_gap, g.rhs_gap);
          });
    m.def("reduced_equivalence_check", &reduced_equivalence_check);

    m.def("rate_harness_abs",
          [](const Path& path, std::vector<double> hs, double theta, bool brownian) {
              auto r = rate_harness_abs(path, hs, theta,
                                        brownian ? PartitionRule::Brownian
                                                 : PartitionRule::Continuous);
              py::list table;
              for (const auto& pt : r.table)
                  table.append(py::make_tuple(pt.h, pt.rho, pt.sup_error, pt.normalized));
              return py::make_tuple(table, r.fitted_slope);
          },
          py::arg("path"), py::arg("hs"), py::arg("theta") = 1.0,
          py::arg("brownian") = false);

    m.def("gassiat_experiment",
          [](double R, int teeth, double h, double theta) {
              auto r = gassiat_experiment(R, teeth, h, theta);
              return py::make_tuple(r.value, r.control_excess);
          },
          py::arg("R"), py::arg("teeth"), py::arg("h"), py::arg("theta") = 1.0);

    m.def("solve_semilinear",
          [](double nu, const std::string& noise, const Path& path, const GridFn& u0,
             double T) {
              auto run = solve_semilinear(SemiF::heat(nu), catalog_noise(noise), path, u0, T);
              return run.u;
          },
          py::arg("nu"), py::arg("noise"), py::arg("path"), py::arg("u0"), py::arg("T"));

    py::class_<ConservedField>(m, "ConservedField")
        .def(py::init([](double a, double b, std::vector<double> values, bool periodic) {
                 ConservedField f;
                 f.x0 = a;
                 f.h = (b - a) / values.size();
                 f.u = std::move(values);
                 f.periodic = periodic;
                 return f;
             }),
             py::arg("a"), py::arg("b"), py::arg("values"), py::arg("periodic") = true)
        .def_property_readonly("values", [](const ConservedField& f) { return f.u; })
        .def("mass", &ConservedField::mass)
        .def("tv", &ConservedField::tv);

    m.def("pathwise_scl_solve",
          [](const std::string& flux, const Path& path, const ConservedField& u0, double T) {
              return pathwise_scl_solve(catalog_flux(flux), path, u0, T);
          },
          py::arg("flux"), py::arg("path"), py::arg("u0"), py::arg("T"));

    m.def("doubled_window",
          [](double lam, double horizon, double step) {
              return doubled_window(catalog_hamiltonian("bounded"),
                                    [](double x) { return -std::sin(x); }, lam, horizon, step,
                                    25, 1.0);
          },
          py::arg("lam"), py::arg("horizon") = 2.0, py::arg("step") = 2e-3);

    m.def("run_acceptance", []() {
        py::list out;
        for (const auto& v : run_acceptance())
            out.append(py::make_tuple(v.check, v.measured, v.bound, v.pass));
        return out;
    });
}
