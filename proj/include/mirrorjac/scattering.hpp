#pragma once

// Half-line discrete Schrodinger operator
//
//   (H psi)(j) = v_j psi(j) + 2 psi(j) - psi(j+1) - psi(j-1),  psi(0) = 0,
//
// with a compactly supported potential: fundamental and Jost solutions,
// the Jost polynomial F(z), its roots, and the scattering phase on the
// unit circle z = e^{ip}, lambda = 2 - 2 cos p.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mirrorjac/polynomial.hpp"

namespace mirrorjac {

using cdouble = std::complex<double>;

/// v_1..v_J with v_J != 0, or the zero potential (J = 0).
class Potential {
 public:
  Potential() = default;
  /// Trailing zeros are dropped so that J is tight. DomainError on
  /// non-finite entries.
  explicit Potential(std::vector<double> v);

  std::size_t support() const noexcept { return v_.size(); }
  const std::vector<double>& values() const noexcept { return v_; }
  /// v_j for j >= 1; zero past the support.
  double at(std::size_t j) const noexcept {
    return (j >= 1 && j <= v_.size()) ? v_[j - 1] : 0.0;
  }

 private:
  std::vector<double> v_;
};

/// phi(0..j_max): phi(0) = 0, phi(1) = 1, phi(j+1) = (2 + v_j - lambda) phi(j) - phi(j-1).
template <class Scalar>
std::vector<Scalar> fundamental_solution(const Potential& pot, Scalar lambda,
                                         std::size_t j_max) {
  std::vector<Scalar> phi(j_max + 1, Scalar(0));
  if (j_max >= 1) phi[1] = Scalar(1);
  for (std::size_t j = 1; j < j_max; ++j) {
    phi[j + 1] = (Scalar(2) + Scalar(pot.at(j)) - lambda) * phi[j] - phi[j - 1];
  }
  return phi;
}

/// Coefficients in lambda (ascending) of phi(j, lambda), a polynomial of
/// degree j - 1 (empty for j = 0).
template <class Scalar>
std::vector<Scalar> fundamental_polynomial(std::span<const Scalar> v, std::size_t j) {
  std::vector<Scalar> prev;              // phi(0) = 0
  std::vector<Scalar> cur{Scalar(1)};    // phi(1) = 1
  if (j == 0) return prev;
  for (std::size_t k = 1; k < j; ++k) {
    const Scalar shift = Scalar(2) + (k <= v.size() ? v[k - 1] : Scalar(0));
    std::vector<Scalar> next(cur.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i] += shift * cur[i];
      next[i + 1] -= cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Jost solution f(0..j_max) with f(j) = z^j for j > J, continued to
/// j <= J by the backward recurrence from the exact tail values at J+1, J+2.
std::vector<cdouble> jost_solution(const Potential& pot, cdouble z, std::size_t j_max);

/// W_j(psi1, psi2) = -[psi1(j) psi2(j+1) - psi1(j+1) psi2(j)].
/// Sequences are indexed from site 0. std::out_of_range if j + 1 is
/// outside either sequence.
template <class Scalar>
Scalar wronskian(std::span<const Scalar> psi1, std::span<const Scalar> psi2, std::size_t j) {
  if (j + 1 >= psi1.size() || j + 1 >= psi2.size()) {
    throw std::out_of_range("wronskian: index out of range");
  }
  return -(psi1[j] * psi2[j + 1] - psi1[j + 1] * psi2[j]);
}

/// Coefficients c_0..c_{2J-1} of F(z) = 1 + sum_j v_j z^j phi(j, 2 - z - 1/z).
///
/// Built from psi_j(z) = z^{j-1} phi(j), which obeys the polynomial
/// recurrence psi_{j+1} = (z^2 + v_j z + 1) psi_j - z^2 psi_{j-1}, so that
/// F(z) = 1 + z sum_j v_j psi_j(z) carries no negative powers at any step.
/// Works over any field type (double, boost rationals).
template <class Scalar>
std::vector<Scalar> jost_coefficients(std::span<const Scalar> v) {
  const std::size_t J = v.size();
  std::vector<Scalar> f(J == 0 ? 1 : 2 * J, Scalar(0));
  f[0] = Scalar(1);
  std::vector<Scalar> prev;              // psi_0 = 0
  std::vector<Scalar> cur{Scalar(1)};    // psi_1 = 1
  for (std::size_t j = 1; j <= J; ++j) {
    for (std::size_t i = 0; i < cur.size(); ++i) f[i + 1] += v[j - 1] * cur[i];
    if (j == J) break;
    std::vector<Scalar> next(cur.size() + 2, Scalar(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i] += cur[i];
      next[i + 1] += v[j - 1] * cur[i];
      next[i + 2] += cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i + 2] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return f;
}

inline constexpr double kAdmissibilityMargin = 1e-9;

struct JostPolynomial {
  std::vector<double> coeffs;  // c_0 = 1, ..., c_D
  std::vector<cdouble> roots;  // all D roots
  bool admissible = false;     // no zeros in the closed unit disk, with margin
  double min_root_modulus = 0.0;
  double value_at_one = 1.0;        // F(1)
  double value_at_minus_one = 1.0;  // F(-1)

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  cdouble operator()(cdouble z) const noexcept { return poly::evaluate(coeffs, z); }
};

/// Builds F, locates all roots and decides admissibility:
/// min |z_n| > 1 + 1e-9 and |F(+-1)| > 1e-9.
JostPolynomial jost_polynomial(const Potential& pot);

struct DiscreteSpectrum {
  std::vector<double> eigenvalues;        // from real roots in (-1, 1), ascending
  std::vector<cdouble> nonreal;           // lambda values of complex roots in the disk
};

/// lambda_n = 2 - alpha_n - 1/alpha_n for every root with |alpha_n| < 1.
DiscreteSpectrum discrete_spectrum(const JostPolynomial& jost);

inline constexpr std::size_t kDefaultPhaseGrid = 4096;

/// F(e^{ip}) = exp(sigma(p) - i eta(p)) on a uniform grid over [0, pi],
/// with eta on the continuous branch fixed by eta(0) = 0.
class PhaseFunction {
 public:
  PhaseFunction(JostPolynomial jost, std::vector<double> grid, std::vector<double> eta,
                std::vector<double> sigma);

  const JostPolynomial& jost() const noexcept { return jost_; }
  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& eta_samples() const noexcept { return eta_; }
  const std::vector<double>& sigma_samples() const noexcept { return sigma_; }

  /// Linear interpolation of the grid samples (p in [0, pi]); plotting only.
  double eta_interpolated(double p) const;

  /// Direct evaluation -arg F(e^{ip}) for any real p, with the branch taken
  /// nearest to the odd 2 pi-periodic extension of the grid samples.
  double eta(double p) const;
  /// d eta / dp = -Re(z F'(z) / F(z)), z = e^{ip}.
  double eta_derivative(double p) const;
  double sigma(double p) const;
  /// max |eta'| over the grid.
  double max_abs_derivative() const;

 private:
  JostPolynomial jost_;
  std::vector<double> grid_;
  std::vector<double> eta_;
  std::vector<double> sigma_;
};

/// PreconditionError unless jost.admissible and G >= 256; NumericalError
/// if the unwrapped branch does not return to 0 at p = pi.
PhaseFunction phase_function(const JostPolynomial& jost, std::size_t G = kDefaultPhaseGrid);

enum class PhaseEvaluation { exact, interpolated };

/// delta(lambda) = eta(arccos(1 - lambda/2)). DomainError outside [0, 4].
double delta_of_lambda(const PhaseFunction& phase, double lambda,
                       PhaseEvaluation mode = PhaseEvaluation::exact);

/// delta'(lambda) = eta'(p) / (2 sin p); DomainError outside (0, 4).
double delta_derivative(const PhaseFunction& phase, double lambda);

/// Winding number of F(e^{ip}) over p in [0, 2 pi] counted on n uniform
/// samples; nonzero only for non-admissible potentials.
int winding_number(const JostPolynomial& jost, std::size_t n = kDefaultPhaseGrid);

}  // namespace mirrorjac
