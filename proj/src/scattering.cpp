#include "mirrorjac/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mirrorjac/error.hpp"
#include "mirrorjac/numeric.hpp"

namespace mirrorjac {

namespace {

// e^{ip} with exact values at the real points of the circle.
cdouble unit_point(double p) {
  if (p == 0.0) return {1.0, 0.0};
  if (p == kPi) return {-1.0, 0.0};
  return std::polar(1.0, p);
}

double wrap_to_pi(double x) {
  return x - 2.0 * kPi * std::round(x / (2.0 * kPi));
}

// Unwrapped -arg F(e^{ip}) on p_i = span * i / (n - 1), starting at -arg F(1).
std::vector<double> unwrapped_phase(const JostPolynomial& jost, std::size_t n, double span,
                                    double* max_step) {
  std::vector<double> eta(n);
  double prev_raw = 0.0;
  double offset = 0.0;
  *max_step = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = (i + 1 == n) ? span : span * static_cast<double>(i) / static_cast<double>(n - 1);
    const double raw = -std::arg(jost(unit_point(p)));
    if (i > 0) {
      const double step = wrap_to_pi(raw - prev_raw);
      *max_step = std::max(*max_step, std::abs(step));
      offset += step - (raw - prev_raw);
    }
    eta[i] = raw + offset;
    prev_raw = raw;
  }
  return eta;
}

}  // namespace

Potential::Potential(std::vector<double> v) : v_(std::move(v)) {
  if (!std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); })) {
    throw DomainError("Potential", "entries must be finite");
  }
  while (!v_.empty() && v_.back() == 0.0) v_.pop_back();
}

std::vector<cdouble> jost_solution(const Potential& pot, cdouble z, std::size_t j_max) {
  const std::size_t J = pot.support();
  const std::size_t top = std::max(j_max, J + 2);
  std::vector<cdouble> f(top + 1);
  for (std::size_t j = J + 1; j <= top; ++j) f[j] = std::pow(z, static_cast<int>(j));
  const cdouble lambda = 2.0 - z - 1.0 / z;
  for (std::size_t j = J + 1; j-- > 0;) {
    // f(j) from the equation at site j + 1.
    f[j] = (2.0 + pot.at(j + 1) - lambda) * f[j + 1] - f[j + 2];
  }
  f.resize(j_max + 1);
  return f;
}

JostPolynomial jost_polynomial(const Potential& pot) {
  JostPolynomial jost;
  jost.coeffs = jost_coefficients<double>(std::span<const double>(pot.values()));
  jost.roots = poly::roots(jost.coeffs);
  jost.value_at_one = poly::evaluate(jost.coeffs, 1.0).real();
  jost.value_at_minus_one = poly::evaluate(jost.coeffs, -1.0).real();
  jost.min_root_modulus = std::numeric_limits<double>::infinity();
  for (const cdouble& z : jost.roots) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalError("jost_polynomial", "root finder returned a non-finite root");
    }
    jost.min_root_modulus = std::min(jost.min_root_modulus, std::abs(z));
  }
  jost.admissible = jost.min_root_modulus > 1.0 + kAdmissibilityMargin &&
                    std::abs(jost.value_at_one) > kAdmissibilityMargin &&
                    std::abs(jost.value_at_minus_one) > kAdmissibilityMargin;
  return jost;
}

DiscreteSpectrum discrete_spectrum(const JostPolynomial& jost) {
  DiscreteSpectrum out;
  for (const cdouble& alpha : jost.roots) {
    if (std::abs(alpha) >= 1.0) continue;
    const cdouble lambda = 2.0 - alpha - 1.0 / alpha;
    if (std::abs(alpha.imag()) <= 1e-12 * std::abs(alpha)) {
      out.eigenvalues.push_back(lambda.real());
    } else {
      out.nonreal.push_back(lambda);
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

PhaseFunction::PhaseFunction(JostPolynomial jost, std::vector<double> grid,
                             std::vector<double> eta, std::vector<double> sigma)
    : jost_(std::move(jost)), grid_(std::move(grid)), eta_(std::move(eta)), sigma_(std::move(sigma)) {
  if (grid_.size() < 2 || eta_.size() != grid_.size() || sigma_.size() != grid_.size()) {
    throw DomainError("PhaseFunction", "grid, eta and sigma must have equal size >= 2");
  }
}

double PhaseFunction::eta_interpolated(double p) const {
  if (!(p >= 0.0 && p <= kPi)) throw DomainError("eta_interpolated", "p must lie in [0, pi]");
  const double h = kPi / static_cast<double>(grid_.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(p / h), grid_.size() - 2);
  const double t = (p - grid_[i]) / h;
  return (1.0 - t) * eta_[i] + t * eta_[i + 1];
}

double PhaseFunction::eta(double p) const {
  if (!std::isfinite(p)) throw DomainError("eta", "p must be finite");
  const double q = wrap_to_pi(p);  // (-pi, pi]
  const double reference = q >= 0.0 ? eta_interpolated(std::min(q, kPi)) : -eta_interpolated(-q);
  const double raw = -std::arg(jost_(unit_point(std::abs(q) == kPi ? kPi : q)));
  return raw + 2.0 * kPi * std::round((reference - raw) / (2.0 * kPi));
}

double PhaseFunction::eta_derivative(double p) const {
  const cdouble z = unit_point(p);
  const auto [value, deriv] = poly::evaluate_with_derivative(jost_.coeffs, z);
  return -(z * deriv / value).real();
}

double PhaseFunction::sigma(double p) const { return std::log(std::abs(jost_(unit_point(p)))); }

double PhaseFunction::max_abs_derivative() const {
  double best = 0.0;
  for (double p : grid_) best = std::max(best, std::abs(eta_derivative(p)));
  return best;
}

PhaseFunction phase_function(const JostPolynomial& jost, std::size_t G) {
  if (!jost.admissible) {
    throw PreconditionError("phase_function", "Jost polynomial is not admissible");
  }
  if (G < 256) throw PreconditionError("phase_function", "grid size must be >= 256");

  // Refine by doubling until adjacent samples are far from the pi fold,
  // then read the branch back on the requested grid.
  std::size_t refine = 1;
  double max_step = 0.0;
  std::vector<double> fine;
  constexpr std::size_t kMaxPoints = std::size_t{1} << 22;
  while (true) {
    const std::size_t n = (G - 1) * refine + 1;
    fine = unwrapped_phase(jost, n, kPi, &max_step);
    if (max_step < kPi / 4.0 || n * 2 > kMaxPoints) break;
    refine *= 2;
  }
  if (max_step >= kPi / 2.0) {
    throw NumericalError("phase_function", "phase varies too fast to unwrap reliably");
  }

  std::vector<double> grid(G);
  std::vector<double> eta(G);
  std::vector<double> sigma(G);
  for (std::size_t i = 0; i < G; ++i) {
    grid[i] = (i + 1 == G) ? kPi : kPi * static_cast<double>(i) / static_cast<double>(G - 1);
    eta[i] = fine[i * refine];
    sigma[i] = std::log(std::abs(jost(unit_point(grid[i]))));
  }
  const double end = eta.back();
  const long winding = std::lround(end / (2.0 * kPi));
  if (winding != 0 || std::abs(end) > 1e-10) {
    throw NumericalError("phase_function",
                         "eta(pi) = " + std::to_string(end) + " after unwrapping; expected 0");
  }
  return PhaseFunction(jost, std::move(grid), std::move(eta), std::move(sigma));
}

double delta_of_lambda(const PhaseFunction& phase, double lambda, PhaseEvaluation mode) {
  if (!(lambda >= 0.0 && lambda <= 4.0)) {
    throw DomainError("delta_of_lambda", "lambda must lie in [0, 4]");
  }
  const double p = std::acos(std::clamp(1.0 - 0.5 * lambda, -1.0, 1.0));
  return mode == PhaseEvaluation::exact ? phase.eta(p) : phase.eta_interpolated(p);
}

double delta_derivative(const PhaseFunction& phase, double lambda) {
  if (!(lambda > 0.0 && lambda < 4.0)) {
    throw DomainError("delta_derivative", "lambda must lie in (0, 4)");
  }
  const double p = std::acos(1.0 - 0.5 * lambda);
  return phase.eta_derivative(p) / (2.0 * std::sin(p));
}

int winding_number(const JostPolynomial& jost, std::size_t n) {
  double max_step = 0.0;
  const std::vector<double> eta = unwrapped_phase(jost, std::max<std::size_t>(n, 3), 2.0 * kPi, &max_step);
  return static_cast<int>(std::lround(-(eta.back() - eta.front()) / (2.0 * kPi)));
}

}  // namespace mirrorjac
