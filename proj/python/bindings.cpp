#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mirrorjac/continuum.hpp"
#include "mirrorjac/error.hpp"
#include "mirrorjac/exact_identity.hpp"
#include "mirrorjac/theorem2.hpp"

namespace py = pybind11;
using namespace mirrorjac;

namespace {

py::tuple signed_log(const SignedLog& s) { return py::make_tuple(s.sign, s.log_abs); }

py::dict jost_dict(const JostPolynomial& j) {
  py::dict d;
  d["coeffs"] = j.coeffs;
  d["roots"] = j.roots;
  d["admissible"] = j.admissible;
  d["min_root_modulus"] = j.min_root_modulus;
  return d;
}

py::dict pairing_dict(const PairingResult& r) {
  py::dict d;
  d["pairing"] = to_string(r.pairing);
  d["lhs_sign"] = r.lhs_sign;
  d["lhs_log"] = r.lhs_log;
  d["rhs_sign"] = r.rhs_sign;
  d["rhs_log"] = r.rhs_log;
  d["gap"] = r.gap;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Eigenvalue product identities for mirror-symmetric Jacobi matrices";

  py::register_exception<DegeneracyError>(m, "DegeneracyError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<MirrorJacobiSpec>(m, "MirrorJacobiSpec")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("a"), py::arg("b"))
      .def_property_readonly("a", &MirrorJacobiSpec::a)
      .def_property_readonly("b", &MirrorJacobiSpec::b)
      .def_property_readonly("M", &MirrorJacobiSpec::half_size)
      .def("expand", [](const MirrorJacobiSpec& s) {
        const TridiagMatrix t = expand(s);
        return py::make_tuple(t.diag, t.offdiag);
      })
      .def("__repr__", [](const MirrorJacobiSpec& s) {
        return "MirrorJacobiSpec(M=" + std::to_string(s.half_size()) + ")";
      });

  m.def(
      "eigenvalues",
      [](std::vector<double> diag, std::vector<double> offdiag) {
        return eigenvalues(TridiagMatrix(std::move(diag), std::move(offdiag))).values;
      },
      py::arg("diag"), py::arg("offdiag"), "Ascending eigenvalues of a symmetric tridiagonal matrix.");
  m.def(
      "parity_spectra",
      [](const MirrorJacobiSpec& s) {
        const ParitySpectra ps = parity_spectra(s);
        return py::make_tuple(ps.mu.values, ps.nu.values);
      },
      py::arg("spec"), "(mu, nu): reflection-even and reflection-odd eigenvalues.");
  m.def("parity_signs", [](const MirrorJacobiSpec& s) { return parity_signs(s); }, py::arg("spec"));

  m.def("lhs_theorem1", [](const MirrorJacobiSpec& s) { return signed_log(lhs_theorem1(s)); },
        py::arg("spec"), "(sign, log|.|) of prod (mu_m - nu_n).");
  m.def("rhs_theorem1", [](const MirrorJacobiSpec& s) { return signed_log(rhs_theorem1(s)); },
        py::arg("spec"));
  m.def(
      "resultant",
      [](const MirrorJacobiSpec& s) {
        // Arbitrary-size integer handed over as a decimal string.
        return py::int_(py::str(resultant_theorem1_detail(s).resultant.str()));
      },
      py::arg("spec"), "Exact Res(P_even, P_odd) for an integer spec.");
  m.def("resultant_theorem1", &resultant_theorem1, py::arg("spec"));
  m.def("appendix_identity13", &appendix_identity13, py::arg("M"));
  m.def("appendix_lemma3", &appendix_lemma3, py::arg("M"), py::arg("n"), py::arg("alpha"));
  m.def("appendix_cos_product", [](int M) { return appendix_cos_product(M).absolute; },
        py::arg("M"));

  m.def("jost_polynomial", [](std::vector<double> v) { return jost_dict(jost_polynomial(Potential(std::move(v)))); },
        py::arg("v"));
  m.def(
      "bound_states",
      [](std::vector<double> v) {
        return discrete_spectrum(jost_polynomial(Potential(std::move(v)))).eigenvalues;
      },
      py::arg("v"));
  m.def("winding_number",
        [](std::vector<double> v) { return winding_number(jost_polynomial(Potential(std::move(v)))); },
        py::arg("v"));
  m.def(
      "phase",
      [](std::vector<double> v, std::size_t grid) {
        const PhaseFunction ph = phase_function(jost_polynomial(Potential(std::move(v))), grid);
        return py::make_tuple(ph.grid(), ph.eta_samples(), ph.sigma_samples());
      },
      py::arg("v"), py::arg("grid") = kDefaultPhaseGrid, "(p, eta, sigma) samples on [0, pi].");

  m.def(
      "verify_theorem2",
      [](std::vector<double> v) {
        const Theorem2Report r = verify_theorem2(Potential(std::move(v)));
        py::dict d;
        d["identity_expected"] = r.identity_expected;
        d["eq55_residual"] = r.eq55_residual;
        d["eq56_residual"] = r.eq56_residual;
        d["eq57_residual"] = r.eq57_residual;
        d["quadrature_estimate"] = r.quadrature_estimate;
        return d;
      },
      py::arg("v"));
  m.def("example_identity", &example_identity_vieta, py::arg("v1"), py::arg("v2"));
  m.def(
      "finite_m_bridge",
      [](std::vector<double> v, std::size_t M) {
        const FiniteMBridgeReport r = finite_m_bridge(Potential(std::move(v)), M);
        py::dict d;
        d["M"] = r.M;
        d["sum_S"] = r.sum_S;
        d["S"] = r.S;
        d["spectra_crosscheck"] = r.spectra_crosscheck;
        return d;
      },
      py::arg("v"), py::arg("M"));
  m.def("pv_omega_power", &pv_omega_power, py::arg("k"), py::arg("nu"));

  m.def(
      "delta_eigenvalues",
      [](double A, int sign, std::size_t N) {
        const ContinuumSpectra s = delta_eigenvalues(A, sign, N);
        return py::make_tuple(s.mu, s.nu);
      },
      py::arg("A"), py::arg("sign"), py::arg("N"));
  m.def(
      "hypothesis_product",
      [](double A, std::size_t N) {
        const HypothesisReport r = hypothesis_product(A, N);
        py::dict d;
        d["A"] = r.A;
        d["N"] = r.N;
        d["printed"] = pairing_dict(r.printed);
        d["parity"] = pairing_dict(r.parity);
        return d;
      },
      py::arg("A"), py::arg("N"));

  m.attr("__version__") = MIRRORJAC_VERSION;
}
