// Python bindings for the scattering library. Dense results only; the
// sparse lattice internals stay behind the two oracle entry points.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fanoqed/coupling.hpp"
#include "fanoqed/lattice.hpp"
#include "fanoqed/single_photon.hpp"
#include "fanoqed/two_photon.hpp"

namespace py = pybind11;
using namespace fanoqed;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Few-photon scattering for a resonator with a direct pathway";
  m.attr("chi_infinite") = chi_infinite;

  py::class_<SystemSpec>(m, "SystemSpec")
      .def(py::init<>())
      .def_readwrite("channels", &SystemSpec::channels)
      .def_readwrite("omega", &SystemSpec::omega)
      .def_readwrite("sigma", &SystemSpec::sigma)
      .def_readwrite("chi", &SystemSpec::chi)
      .def_readwrite("t_bg", &SystemSpec::t_bg)
      .def_readwrite("r_sign", &SystemSpec::r_sign)
      .def_readwrite("phi", &SystemSpec::phi)
      .def_readwrite("parity", &SystemSpec::parity)
      .def("two_level", &SystemSpec::two_level)
      .def("r", &SystemSpec::r);
  m.def("validated", &validated, py::arg("spec"));
  m.def("load_config", &load_config, py::arg("path"));

  py::class_<DirectScattering>(m, "DirectScattering")
      .def_readwrite("c", &DirectScattering::c);
  py::class_<CouplingSet>(m, "CouplingSet")
      .def_readwrite("d", &CouplingSet::d)
      .def_readwrite("kappa", &CouplingSet::kappa);
  py::class_<MicroscopicParams>(m, "MicroscopicParams")
      .def(py::init<>())
      .def_readwrite("xi", &MicroscopicParams::xi)
      .def_readwrite("v", &MicroscopicParams::v);
  py::class_<ConstraintReport>(m, "ConstraintReport")
      .def_readonly("residuals", &ConstraintReport::residuals)
      .def_readonly("tolerance", &ConstraintReport::tolerance)
      .def_readonly("passed", &ConstraintReport::passed)
      .def("max_residual", &ConstraintReport::max_residual);
  py::class_<MicroscopicSolution>(m, "MicroscopicSolution")
      .def_readonly("bg", &MicroscopicSolution::bg)
      .def_readonly("coup", &MicroscopicSolution::coup)
      .def_readonly("sigma", &MicroscopicSolution::sigma);
  m.def("build_two_port_background", &build_two_port_background,
        py::arg("t"), py::arg("r_sign"), py::arg("phi"));
  m.def("solve_mirror_coupling", &solve_mirror_coupling, py::arg("spec"));
  m.def("validate_constraints", &validate_constraints, py::arg("bg"),
        py::arg("coup"), py::arg("sigma"), py::arg("tol") = 1e-12);
  m.def("from_microscopic", &from_microscopic, py::arg("micro"));
  m.def("direct_coupling_for_background", &direct_coupling_for_background,
        py::arg("t"));

  py::class_<AmplitudeRow>(m, "AmplitudeRow")
      .def_readonly("k", &AmplitudeRow::k)
      .def_readonly("t11", &AmplitudeRow::t11)
      .def_readonly("t21", &AmplitudeRow::t21)
      .def_readonly("p11", &AmplitudeRow::p11)
      .def_readonly("p21", &AmplitudeRow::p21)
      .def_readonly("unitarity_residual", &AmplitudeRow::unitarity_residual);
  py::class_<AmplitudeTable>(m, "AmplitudeTable")
      .def_readonly("rows", &AmplitudeTable::rows)
      .def_readonly("flux_conserving", &AmplitudeTable::flux_conserving)
      .def_readonly("max_unitarity_residual",
                    &AmplitudeTable::max_unitarity_residual);
  py::class_<FanoFeatures>(m, "FanoFeatures")
      .def_readonly("k_zero", &FanoFeatures::k_zero)
      .def_readonly("k_peak", &FanoFeatures::k_peak);
  m.def("s1_amplitude",
        py::overload_cast<const SystemSpec&, int, int, double>(&s1_amplitude),
        py::arg("spec"), py::arg("mu"), py::arg("nu"), py::arg("k"));
  m.def("transmission_spectrum", &transmission_spectrum, py::arg("spec"),
        py::arg("k_min"), py::arg("k_max"), py::arg("points"));
  m.def("fano_features", &fano_features, py::arg("spec"));
  m.def("unitarity_residual", &unitarity_residual, py::arg("spec"),
        py::arg("k_min"), py::arg("k_max"), py::arg("points"));

  py::class_<EffectiveCavity>(m, "EffectiveCavity")
      .def_readonly("e0", &EffectiveCavity::e0)
      .def_readonly("e1", &EffectiveCavity::e1)
      .def_readonly("e2", &EffectiveCavity::e2);
  m.def("effective_cavity", &effective_cavity, py::arg("spec"));
  py::class_<QuadratureParams>(m, "QuadratureParams")
      .def(py::init<>())
      .def_readwrite("t_max", &QuadratureParams::t_max)
      .def_readwrite("step", &QuadratureParams::step)
      .def_readwrite("tol", &QuadratureParams::tol);
  py::class_<KernelResult>(m, "KernelResult")
      .def_readonly("value", &KernelResult::value)
      .def_readonly("err_estimate", &KernelResult::err_estimate)
      .def_readonly("converged", &KernelResult::converged);
  m.def("connected_kernel", &connected_kernel, py::arg("spec"), py::arg("mu"),
        py::arg("nu"), py::arg("rho"), py::arg("sg"), py::arg("p1"),
        py::arg("k1"), py::arg("k2"));
  m.def("connected_kernel_numeric", &connected_kernel_numeric,
        py::arg("spec"), py::arg("mu"), py::arg("nu"), py::arg("rho"),
        py::arg("sg"), py::arg("p1"), py::arg("k1"), py::arg("k2"),
        py::arg("quadrature") = QuadratureParams{});
  m.def("bound_state", &bound_state, py::arg("spec"), py::arg("mu"),
        py::arg("nu"), py::arg("k1"), py::arg("k2"), py::arg("x1"),
        py::arg("x2"));
  m.def("plane_wave_pair", &plane_wave_pair, py::arg("k1"), py::arg("k2"),
        py::arg("x1"), py::arg("x2"));
  m.def("outgoing_wavefunction", &outgoing_wavefunction, py::arg("spec"),
        py::arg("mu"), py::arg("nu"), py::arg("k1"), py::arg("k2"),
        py::arg("x1"), py::arg("x2"));
  py::class_<CorrelationPoint>(m, "CorrelationPoint")
      .def_readonly("tau", &CorrelationPoint::tau)
      .def_readonly("g2", &CorrelationPoint::g2)
      .def_readonly("baseline", &CorrelationPoint::baseline);
  py::class_<CorrelationTrace>(m, "CorrelationTrace")
      .def_readonly("points", &CorrelationTrace::points)
      .def_readonly("baseline", &CorrelationTrace::baseline);
  m.def("g2_trace", &g2_trace, py::arg("spec"), py::arg("k1"), py::arg("k2"),
        py::arg("tau_max"), py::arg("points"), py::arg("mu") = 1);
  m.def("g2_zero_closed", &g2_zero_closed, py::arg("spec"), py::arg("E"));
  m.def("fluorescence_weight", &fluorescence_weight, py::arg("spec"),
        py::arg("E"));

  py::class_<LatticeSpec>(m, "LatticeSpec")
      .def(py::init<>())
      .def_readwrite("micro", &LatticeSpec::micro)
      .def_readwrite("omega", &LatticeSpec::omega)
      .def_readwrite("modes_per_channel", &LatticeSpec::modes_per_channel)
      .def_readwrite("window", &LatticeSpec::window)
      .def_readwrite("packet_center", &LatticeSpec::packet_center)
      .def_readwrite("packet_width", &LatticeSpec::packet_width)
      .def_readwrite("evolve_time", &LatticeSpec::evolve_time)
      .def_readwrite("dt", &LatticeSpec::dt)
      .def_readwrite("tau_max", &LatticeSpec::tau_max)
      .def_readwrite("memory_cap", &LatticeSpec::memory_cap);
  py::class_<SingleOracleResult>(m, "SingleOracleResult")
      .def_readonly("spec", &SingleOracleResult::spec)
      .def_readonly("sol", &SingleOracleResult::sol)
      .def_readonly("k", &SingleOracleResult::k)
      .def_readonly("t11", &SingleOracleResult::t11)
      .def_readonly("t21", &SingleOracleResult::t21)
      .def_readonly("t11_ref", &SingleOracleResult::t11_ref)
      .def_readonly("t21_ref", &SingleOracleResult::t21_ref)
      .def_readonly("rms11", &SingleOracleResult::rms11)
      .def_readonly("rms21", &SingleOracleResult::rms21)
      .def_readonly("max_flux_residual",
                    &SingleOracleResult::max_flux_residual)
      .def_readonly("norm_drift", &SingleOracleResult::norm_drift)
      .def_readonly("atom_residue", &SingleOracleResult::atom_residue)
      .def_readonly("k_at_max", &SingleOracleResult::k_at_max)
      .def_readonly("k_at_min", &SingleOracleResult::k_at_min);
  py::class_<TwoOracleResult>(m, "TwoOracleResult")
      .def_readonly("spec", &TwoOracleResult::spec)
      .def_readonly("sol", &TwoOracleResult::sol)
      .def_readonly("tau", &TwoOracleResult::tau)
      .def_readonly("trace", &TwoOracleResult::trace)
      .def_readonly("analytic", &TwoOracleResult::analytic)
      .def_readonly("dip", &TwoOracleResult::dip)
      .def_readonly("plateau", &TwoOracleResult::plateau)
      .def_readonly("flat_dev", &TwoOracleResult::flat_dev)
      .def_readonly("decay_rate", &TwoOracleResult::decay_rate)
      .def_readonly("max_shape_dev", &TwoOracleResult::max_shape_dev)
      .def_readonly("norm_drift", &TwoOracleResult::norm_drift)
      .def_readonly("atom_residue", &TwoOracleResult::atom_residue);
  py::class_<OracleCheck>(m, "OracleCheck")
      .def_readonly("name", &OracleCheck::name)
      .def_readonly("value", &OracleCheck::value)
      .def_readonly("tolerance", &OracleCheck::tolerance)
      .def_readonly("passed", &OracleCheck::passed);
  py::class_<OracleReport>(m, "OracleReport")
      .def_readonly("checks", &OracleReport::checks)
      .def_readonly("passed", &OracleReport::passed);
  py::class_<TwoOracleExpectation>(m, "TwoOracleExpectation")
      .def(py::init<>())
      .def_readwrite("dip_ratio_tol", &TwoOracleExpectation::dip_ratio_tol)
      .def_readwrite("flat_tol", &TwoOracleExpectation::flat_tol)
      .def_readwrite("decay_rel_tol", &TwoOracleExpectation::decay_rel_tol);
  m.def("oracle_single_transmission", &oracle_single_transmission,
        py::arg("spec"), py::call_guard<py::gil_scoped_release>());
  m.def("oracle_two_photon_g2", &oracle_two_photon_g2, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  m.def("compare_with_analytic",
        py::overload_cast<const SingleOracleResult&, double>(
            &compare_with_analytic),
        py::arg("result"), py::arg("rms_tol") = 2e-2);
  m.def("compare_with_analytic",
        py::overload_cast<const TwoOracleResult&, TwoOracleExpectation>(
            &compare_with_analytic),
        py::arg("result"), py::arg("expect") = TwoOracleExpectation{});
}
