#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sphereflow/errors.hpp"
#include "sphereflow/exact.hpp"
#include "sphereflow/grid.hpp"
#include "sphereflow/operators.hpp"
#include "sphereflow/spharm.hpp"
#include "sphereflow/timestep.hpp"
#include "sphereflow/verify.hpp"

namespace py = pybind11;
using namespace sphereflow;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> field_values(const ScalarField& f) {
  py::array_t<double> out({f.grid().nlat(), f.grid().nlon()});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

ScalarField field_from_array(const GridPtr& grid,
                             py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2 || a.shape(0) != grid->nlat() || a.shape(1) != grid->nlon()) {
    throw Error(ErrorCode::kGridMismatch, "array shape must be (nlat, nlon)");
  }
  return ScalarField(grid, std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flows on the unit sphere: exact point-vortex solution, operators and checks.";
  m.attr("__version__") = "0.1.0";

  static py::exception<Error> error_type(m, "SphereflowError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::enum_<GridKind>(m, "GridKind")
      .value("GAUSS_LEGENDRE", GridKind::kGaussLegendre)
      .value("UNIFORM_INTERIOR", GridKind::kUniformInterior);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int nlat, int nlon, GridKind kind) { return GridSpec{nlat, nlon, kind}; }),
           py::arg("nlat") = 64, py::arg("nlon") = 128, py::arg("kind") = GridKind::kGaussLegendre)
      .def_readwrite("nlat", &GridSpec::nlat)
      .def_readwrite("nlon", &GridSpec::nlon)
      .def_readwrite("kind", &GridSpec::kind);

  py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
      .def_property_readonly("nlat", &Grid::nlat)
      .def_property_readonly("nlon", &Grid::nlon)
      .def_property_readonly("thetas", [](const Grid& g) { return to_array(g.thetas()); })
      .def_property_readonly("phis", [](const Grid& g) { return to_array(g.phis()); })
      .def_property_readonly("weights", [](const Grid& g) { return to_array(g.weights()); });

  m.def("build_grid", [](const GridSpec& s) { return std::const_pointer_cast<Grid>(build_grid(s)); },
        py::arg("spec"));

  py::class_<ThetaBand>(m, "ThetaBand")
      .def(py::init([](double lo, double hi) { return ThetaBand{lo, hi}; }),
           py::arg("lo") = ThetaBand{}.lo, py::arg("hi") = ThetaBand{}.hi)
      .def_readwrite("lo", &ThetaBand::lo)
      .def_readwrite("hi", &ThetaBand::hi);

  py::class_<ScalarField>(m, "ScalarField")
      .def(py::init([](std::shared_ptr<Grid> g, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
             return field_from_array(g, a);
           }),
           py::arg("grid"), py::arg("values"))
      .def_property_readonly("values", &field_values)
      .def_property_readonly("grid", [](const ScalarField& f) {
        return std::const_pointer_cast<Grid>(f.grid_ptr());
      });

  m.def("surface_integral", &surface_integral);
  m.def("mercator_of_colatitude", &mercator_of_colatitude);
  m.def("colatitude_of_mercator", &colatitude_of_mercator);

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init<int>(), py::arg("lmax"))
      .def_property_readonly("lmax", &SpectralField::lmax)
      .def("__getitem__", [](const SpectralField& c, std::pair<int, int> lm) {
        return c(lm.first, lm.second);
      })
      .def("__setitem__", [](SpectralField& c, std::pair<int, int> lm, Complex v) {
        c(lm.first, lm.second) = v;
      })
      .def("set_real_mode", &SpectralField::set_real_mode);

  py::class_<TransformPlan>(m, "TransformPlan")
      .def(py::init([](std::shared_ptr<Grid> g, int lmax) {
             return std::make_unique<TransformPlan>(g, lmax);
           }),
           py::arg("grid"), py::arg("lmax"))
      .def_property_readonly("lmax", &TransformPlan::lmax);

  m.def("analyze", &analyze, py::arg("field"), py::arg("plan"));
  m.def("synthesize", &synthesize, py::arg("coeffs"), py::arg("plan"));
  m.def("laplace_beltrami_spectral", &laplace_beltrami_spectral);
  m.def("invert_poisson", &invert_poisson, py::arg("omega"), py::arg("rel_tol") = 1e-10);

  m.def("laplace_beltrami_fd", &laplace_beltrami_fd);
  m.def("jacobian", &jacobian, py::arg("psi"), py::arg("omega"));
  m.def("ns_residual", &ns_residual, py::arg("psi"), py::arg("omega"), py::arg("nu"));
  m.def("velocity_from_streamfunction",
        [](const ScalarField& psi) {
          auto u = velocity_from_streamfunction(psi);
          return py::make_tuple(u.u_theta, u.u_phi);
        });

  py::class_<BasicSolutionParams>(m, "BasicSolutionParams")
      .def(py::init([](double k1, double k2) { return BasicSolutionParams{k1, k2}; }),
           py::arg("k1") = 1.0, py::arg("k2") = 0.0)
      .def_readwrite("k1", &BasicSolutionParams::k1)
      .def_readwrite("k2", &BasicSolutionParams::k2);

  py::enum_<Hemisphere>(m, "Hemisphere")
      .value("NORTH", Hemisphere::kNorth)
      .value("SOUTH", Hemisphere::kSouth);

  m.def("omega_basic", &omega_basic, py::arg("theta"), py::arg("params") = BasicSolutionParams{});
  m.def("u_phi_basic", &u_phi_basic, py::arg("theta"), py::arg("params") = BasicSolutionParams{});
  m.def("psi_basic", &psi_basic, py::arg("theta"), py::arg("params") = BasicSolutionParams{});
  m.def("hemisphere_vorticity_integral", &hemisphere_vorticity_integral);
  m.def("phi_of_omega_basic", &phi_of_omega_basic);
  m.def("basic_solution_coefficients", &basic_solution_coefficients);
  m.def("sample_omega_basic", [](std::shared_ptr<Grid> g, const BasicSolutionParams& p) {
    return sample_omega_basic(g, p);
  });
  m.def("sample_psi_basic", [](std::shared_ptr<Grid> g, const BasicSolutionParams& p) {
    return sample_psi_basic(g, p);
  });

  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("name", &CheckReport::name)
      .def_readonly("max_abs_residual", &CheckReport::max_abs_residual)
      .def_readonly("tolerance", &CheckReport::tolerance)
      .def_readonly("passed", &CheckReport::pass)
      .def("__repr__", [](const CheckReport& r) { return report_csv_row(r); });

  m.def("check_vanishing_jacobian", &check_vanishing_jacobian, py::arg("psi"), py::arg("omega"),
        py::arg("band") = ThetaBand{}, py::arg("tolerance") = 1e-10);
  m.def("check_harmonic_vorticity", &check_harmonic_vorticity, py::arg("omega"),
        py::arg("band") = ThetaBand{}, py::arg("tolerance") = std::nullopt);
  m.def("global_harmonic_nullspace", &global_harmonic_nullspace);
  m.def(
      "check_gg_ode",
      [](const std::function<double(double)>& phi, std::vector<double> omegas, double tol,
         double h) {
        ProfileFunction f = [phi](long double w) {
          return static_cast<long double>(phi(static_cast<double>(w)));
        };
        return check_gg_ode(f, omegas, tol, h);
      },
      "Python callables evaluate in double precision, hence the larger default step.",
      py::arg("phi"), py::arg("omegas"), py::arg("tolerance") = 1e-8, py::arg("h") = 1e-3);
  m.def("check_mercator_obstruction",
        [](std::vector<double> chis, double h, double tol) {
          return check_mercator_obstruction(chis, h, tol);
        },
        py::arg("chis"), py::arg("h") = 1e-3, py::arg("tolerance") = 1e-6);

  py::class_<EvolutionConfig>(m, "EvolutionConfig")
      .def(py::init<>())
      .def_readwrite("nu", &EvolutionConfig::nu)
      .def_readwrite("dt", &EvolutionConfig::dt)
      .def_readwrite("steps", &EvolutionConfig::steps)
      .def_readwrite("lmax", &EvolutionConfig::lmax)
      .def_readwrite("dealias", &EvolutionConfig::dealias);

  py::class_<TimeSeries>(m, "TimeSeries")
      .def_readonly("times", &TimeSeries::times)
      .def_readonly("energy", &TimeSeries::energy)
      .def_readonly("enstrophy", &TimeSeries::enstrophy)
      .def_readonly("max_omega", &TimeSeries::max_omega)
      .def_readonly("drift", &TimeSeries::drift)
      .def_readonly("final_state", &TimeSeries::final_state);

  m.def("evolve", py::overload_cast<const SpectralField&, const EvolutionConfig&>(&evolve),
        py::arg("omega0"), py::arg("config"));
  m.def("steadiness_drift", &steadiness_drift, py::arg("params"), py::arg("lmax"), py::arg("nu"),
        py::arg("t_final"), py::arg("dt") = 1e-3, py::arg("band") = ThetaBand{});
}
