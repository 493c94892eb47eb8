#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace mirrorjac::poly {

using cdouble = std::complex<double>;

/// p(z) for ascending coefficients c_0..c_D.
cdouble evaluate(std::span<const double> c, cdouble z) noexcept;

/// (p(z), p'(z)) in one Horner pass.
std::pair<cdouble, cdouble> evaluate_with_derivative(std::span<const double> c,
                                                     cdouble z) noexcept;

/// All D roots of a real polynomial with c_0 != 0 and c_D != 0.
///
/// Eigenvalues of the companion matrix of the monic reversal
/// w^D p(1/w) / c_0 give the reciprocals of the roots; each root is then
/// polished by Newton's method on p. Real input keeps conjugate pairs
/// exact. Throws NumericalError if the eigenvalue iteration fails.
std::vector<cdouble> roots(std::span<const double> c);

/// Coefficients (ascending) of prod_n (1 - z / z_n).
std::vector<cdouble> from_unit_constant_roots(std::span<const cdouble> roots);

}  // namespace mirrorjac::poly
