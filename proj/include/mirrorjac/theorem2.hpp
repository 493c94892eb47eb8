#pragma once

// Identities on the scattering data of an admissible compact-support
// potential, and the finite-M bridge that ties them to the eigenvalue
// product identity of the mirrored 2M-site chain.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "mirrorjac/jacobi.hpp"
#include "mirrorjac/scattering.hpp"

namespace mirrorjac {

struct QuadratureValue {
  double value = 0.0;
  double error = 0.0;  // estimate
};

/// I(Lambda) = PV int_0^4 delta(lambda) / (lambda - Lambda) d lambda, by
/// subtracting delta(Lambda) and integrating the remainder in p.
/// DomainError unless 0 < Lambda < 4.
QuadratureValue pv_integral_I_detail(const PhaseFunction& phase, double Lambda,
                                     double rel_tol = 1e-12);
double pv_integral_I(const PhaseFunction& phase, double Lambda);

/// PV int_0^4 delta'(lambda) / (lambda - Lambda) d lambda (inner integral of
/// the double-integral identity), same subtraction scheme.
QuadratureValue pv_integral_delta_prime(const PhaseFunction& phase, double Lambda,
                                        double rel_tol = 1e-12);

struct Eq55Terms {
  double single = 0.0;   // int delta (lambda - 2) / (lambda (lambda - 4))
  double double_ = 0.0;  // (1/pi) int delta(l1) PV int delta'(l2) / (l2 - l1)
  double residual = 0.0; // |single + double_|
  double estimate = 0.0; // quadrature error estimate
  std::size_t outer_nodes = 0;
};

/// Evaluates both terms of the phase identity; outer Gauss-Legendre
/// doubling stops once successive values move by < 0.1 * abs_tol.
/// PreconditionError on a non-admissible phase.
Eq55Terms eq55_terms(const PhaseFunction& phase, double abs_tol = 1e-8);
double check_eq55(const PhaseFunction& phase, double abs_tol = 1e-8);

/// log F(1) + log F(-1) + (1/2 pi i) contour integral of log F(1/z) F'(z)/F(z),
/// by the trapezoid rule on n_quad points. Returns the complex sum.
std::complex<double> eq56_sum(const JostPolynomial& jost, std::size_t n_quad);
/// |eq56_sum|. n_quad must be a power of two >= 512.
double check_eq56(const JostPolynomial& jost, std::size_t n_quad = 4096);

/// prod_{m<n} (1 - 1/(z_n z_m)) over all roots, smallest corrections first.
/// No admissibility requirement; NumericalError if non-real roots are not
/// paired with their conjugates.
std::complex<double> eq57_product(const JostPolynomial& jost);
/// |eq57_product - 1|; PreconditionError unless admissible.
double check_eq57(const JostPolynomial& jost);

/// Residual of (s3^2 - s3 s1 + s2 - 1) / s3^2 = 1 with s1, s2, s3 the
/// elementary symmetric functions of the three roots of a J = 2 Jost
/// polynomial, taken from Vieta's relations on (v1, v2).
double example_identity_vieta(double v1, double v2);
/// Same quantity with s1, s2, s3 built from the located roots.
double example_identity_roots(const JostPolynomial& jost);

struct Theorem2Report {
  bool identity_expected = false;  // admissible potential
  std::optional<double> eq55_residual;
  std::optional<double> eq56_residual;
  double eq57_residual = 0.0;
  double quadrature_estimate = 0.0;
};

struct Theorem2Options {
  double eq55_abs_tol = 1e-8;
  std::size_t n_quad = 4096;
  std::size_t phase_grid = kDefaultPhaseGrid;
};

/// All three identities for an admissible potential. Non-admissible
/// potentials yield identity_expected = false with only eq57 evaluated
/// (over all roots) as a control.
Theorem2Report verify_theorem2(const Potential& pot, const Theorem2Options& options = {});

/// a_j = -1, b_j = 2 + v_j (j <= J), b_j = 2 (J < j <= M).
/// DomainError unless M > J.
MirrorJacobiSpec mirror_potential(const Potential& pot, std::size_t M);

struct Quantization {
  std::vector<double> momenta;    // p_1 < ... < p_{2M} in (0, pi)
  std::vector<double> residuals;  // |(2M+1) p_l + 2 eta(p_l) - pi l|
};

/// Solves (2M+1) p + 2 eta(p) = pi l, l = 1..2M, by monotone bisection.
/// PreconditionError when 2 max|eta'| >= 2M + 1; the message names the
/// smallest M that satisfies the bound.
Quantization quantization_solve(const PhaseFunction& phase, std::size_t M);

struct FiniteMBridgeReport {
  std::size_t M = 0;
  double sum_S = 0.0;
  std::vector<double> S;  // S_1..S_M
  std::vector<double> quantization_residuals;
  double spectra_crosscheck = 0.0;  // max |omega(p_l) - lambda_l|
};

FiniteMBridgeReport finite_m_bridge(const PhaseFunction& phase, const Potential& pot,
                                    std::size_t M);
/// Builds the Jost polynomial and phase itself. PreconditionError for a
/// non-admissible potential, DomainError unless M > J.
FiniteMBridgeReport finite_m_bridge(const Potential& pot, std::size_t M);

/// PV int_0^pi dq / [omega(q) - omega(k)]^nu as the average of the +-i0
/// limits, computed on a contour lifted above the pole. 0 < k < pi.
double pv_omega_power(double k, int nu);

/// int_0^{2 pi} I[omega(k)] dk by the midpoint trapezoid rule on K nodes.
QuadratureValue pv_integral_I_average(const PhaseFunction& phase, std::size_t K = 64);

}  // namespace mirrorjac
