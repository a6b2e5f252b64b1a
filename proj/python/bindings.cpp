#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "arrowm/config.hpp"
#include "arrowm/dense_operator.hpp"
#include "arrowm/dynamics.hpp"
#include "arrowm/errors.hpp"
#include "arrowm/freeparticle.hpp"
#include "arrowm/grid.hpp"
#include "arrowm/mellin.hpp"
#include "arrowm/scenario.hpp"

namespace py = pybind11;
using namespace arrowm;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<cplx> amplitudes(const EnergyState& s) {
    py::array_t<cplx> out({s.channel_count(), s.grid().size()});
    auto r = out.mutable_unchecked<2>();
    for (std::size_t c = 0; c < s.channel_count(); ++c)
        for (std::size_t i = 0; i < s.grid().size(); ++i) r(c, i) = s.channel(c)[i];
    return out;
}

EnergyState make_state(GridPtr grid, std::vector<std::string> channels,
                       py::array_t<cplx, py::array::c_style | py::array::forcecast> amps) {
    if (amps.ndim() != 2 || static_cast<std::size_t>(amps.shape(0)) != channels.size() ||
        static_cast<std::size_t>(amps.shape(1)) != grid->size())
        throw StructuralError("amplitudes must have shape (channels, grid size)");
    auto r = amps.unchecked<2>();
    std::vector<std::vector<cplx>> a(channels.size(), std::vector<cplx>(grid->size()));
    for (std::size_t c = 0; c < a.size(); ++c)
        for (std::size_t i = 0; i < grid->size(); ++i) a[c][i] = r(c, i);
    return EnergyState(std::move(grid), std::move(channels), std::move(a));
}

MApplier applier(const std::string& path, const GridPtr& grid) {
    if (parse_path_kind(path) == PathKind::fast) return MApplier::fast();
    return MApplier::direct(std::make_shared<const DenseOperator>(grid));
}

}  // namespace

PYBIND11_MODULE(_arrowm, m) {
    m.doc() = "Lyapunov operator M on a logarithmic energy grid";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_RuntimeError);

    py::class_<LogEnergyGrid, std::shared_ptr<LogEnergyGrid>>(m, "LogEnergyGrid")
        .def_property_readonly("e_min", &LogEnergyGrid::e_min)
        .def_property_readonly("e_max", &LogEnergyGrid::e_max)
        .def_property_readonly("du", &LogEnergyGrid::du)
        .def("__len__", &LogEnergyGrid::size)
        .def_property_readonly("points", [](const LogEnergyGrid& g) { return to_array(g.points()); })
        .def_property_readonly("weights", [](const LogEnergyGrid& g) { return to_array(g.weights()); });

    m.def("make_log_grid",
          [](double lo, double hi, std::size_t n) {
              return std::const_pointer_cast<LogEnergyGrid>(make_log_grid(lo, hi, n));
          },
          py::arg("e_min"), py::arg("e_max"), py::arg("n"));

    py::class_<EnergyState>(m, "EnergyState")
        .def(py::init([](std::shared_ptr<LogEnergyGrid> g, std::vector<std::string> ch,
                         py::array_t<cplx, py::array::c_style | py::array::forcecast> a) {
                 return make_state(std::move(g), std::move(ch), std::move(a));
             }),
             py::arg("grid"), py::arg("channels"), py::arg("amplitudes"))
        .def_property_readonly("channels", &EnergyState::channels)
        .def_property_readonly("grid",
                               [](const EnergyState& s) { return std::const_pointer_cast<LogEnergyGrid>(s.grid_ptr()); })
        .def_property_readonly("amplitudes", &amplitudes)
        .def("norm", [](const EnergyState& s) { return norm(s); });

    m.def("inner_product", &inner_product);

    py::class_<GaussianPacketParams>(m, "GaussianPacket")
        .def(py::init([](double eta, double p0, double xi0) {
                 GaussianPacketParams p{eta, p0, xi0};
                 p.validate();
                 return p;
             }),
             py::arg("eta") = 1.0, py::arg("p0") = 0.64, py::arg("xi0") = 0.3)
        .def_readonly("eta", &GaussianPacketParams::eta)
        .def_readonly("p0", &GaussianPacketParams::p0)
        .def_readonly("xi0", &GaussianPacketParams::xi0)
        .def("position_density", &position_density, py::arg("x"), py::arg("t"))
        .def("negative_momentum_mass", &negative_momentum_mass)
        .def("energy_state",
             [](const GaussianPacketParams& p, std::shared_ptr<LogEnergyGrid> g) { return to_energy_state(p, g); });

    m.def("sample_eigenfunction",
          [](double mv, const std::string& ch, std::shared_ptr<LogEnergyGrid> g) {
              return sample_eigenfunction(mv, ch, g);
          },
          py::arg("m"), py::arg("channel"), py::arg("grid"));

    m.def("apply_m",
          [](const EnergyState& s, const std::string& path) { return applier(path, s.grid_ptr()).apply(s); },
          py::arg("state"), py::arg("path") = "fast");
    m.def("evolve", &evolve, py::arg("state"), py::arg("t"));
    m.def("expectation_m",
          [](const EnergyState& s, const std::string& path) { return expectation_m(s, applier(path, s.grid_ptr())); },
          py::arg("state"), py::arg("path") = "fast");
    m.def("trajectory",
          [](const EnergyState& s, std::vector<double> times, const std::string& path) {
              const auto tr = [&] {
                  py::gil_scoped_release release;
                  return trajectory(s, times, applier(path, s.grid_ptr()));
              }();
              return to_array(tr.values);
          },
          py::arg("state"), py::arg("times"), py::arg("path") = "fast");

    m.def("dense_spectrum",
          [](std::shared_ptr<LogEnergyGrid> g) {
              py::gil_scoped_release release;
              return dense_spectrum(DenseOperator(g));
          },
          py::arg("grid"));
    m.def("hermiticity_residual", [](std::shared_ptr<LogEnergyGrid> g) {
        return DenseOperator(g).hermiticity_residual();
    });

    m.def("eigenvalue_of_frequency", &eigenvalue_of_frequency);
    m.def("frequency_of_eigenvalue", &frequency_of_eigenvalue);
    m.def("eigen_density",
          [](const EnergyState& s, std::vector<double> m_grid) { return eigen_density(s, m_grid); },
          py::arg("state"), py::arg("m_grid"));
    m.def("eigenvalue_grid", &eigenvalue_grid, py::arg("nu_lo"), py::arg("nu_hi"), py::arg("count"));

    m.def("run_scenario",
          [](const std::string& sub, const std::filesystem::path& config, std::optional<std::filesystem::path> out) {
              const auto cmd = parse_subcommand(sub);
              auto cfg = load_config(config, default_config(cmd));
              if (out) cfg.output.dir = *out;
              const auto res = [&] {
                  py::gil_scoped_release release;
                  return run_scenario(cmd, cfg);
              }();
              py::dict summary;
              for (const auto& [k, v] : res.summary.entries()) summary[py::str(k)] = v;
              return summary;
          },
          py::arg("subcommand"), py::arg("config"), py::arg("out") = py::none(),
          "Run a CLI subcommand in-process and return its summary as a dict of strings.");
}
