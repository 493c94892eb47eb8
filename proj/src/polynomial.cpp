#include "mirrorjac/polynomial.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mirrorjac/error.hpp"

namespace mirrorjac::poly {

cdouble evaluate(std::span<const double> c, cdouble z) noexcept {
  cdouble acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

std::pair<cdouble, cdouble> evaluate_with_derivative(std::span<const double> c,
                                                     cdouble z) noexcept {
  cdouble value = 0.0;
  cdouble deriv = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + c[k];
  }
  return {value, deriv};
}

std::vector<cdouble> roots(std::span<const double> c) {
  if (c.empty() || c.front() == 0.0 || c.back() == 0.0) {
    throw DomainError("roots", "need c_0 != 0 and a nonzero leading coefficient");
  }
  const std::size_t degree = c.size() - 1;
  if (degree == 0) return {};

  // Reversal w^D p(1/w) = c_0 w^D + c_1 w^{D-1} + ... + c_D, made monic.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                    static_cast<Eigen::Index>(degree));
  for (std::size_t k = 0; k < degree; ++k) {
    companion(0, static_cast<Eigen::Index>(k)) = -c[k + 1] / c[0];
  }
  for (std::size_t k = 1; k < degree; ++k) {
    companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("roots", "companion eigenvalue iteration did not converge (degree " +
                                      std::to_string(degree) + ")");
  }

  std::vector<cdouble> out;
  out.reserve(degree);
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    cdouble z = 1.0 / solver.eigenvalues()(k);
    double best = std::abs(evaluate(c, z));
    for (int iter = 0; iter < 8 && best > 0.0; ++iter) {
      const auto [value, deriv] = evaluate_with_derivative(c, z);
      if (deriv == cdouble(0.0)) break;
      const cdouble candidate = z - value / deriv;
      const double residual = std::abs(evaluate(c, candidate));
      if (!(residual < best)) break;
      best = residual;
      z = candidate;
    }
    out.push_back(z);
  }
  return out;
}

std::vector<cdouble> from_unit_constant_roots(std::span<const cdouble> roots) {
  std::vector<cdouble> coeffs{1.0};
  for (const cdouble& r : roots) {
    const cdouble factor = -1.0 / r;
    coeffs.push_back(0.0);
    for (std::size_t k = coeffs.size() - 1; k > 0; --k) coeffs[k] += factor * coeffs[k - 1];
  }
  return coeffs;
}

}  // namespace mirrorjac::poly
