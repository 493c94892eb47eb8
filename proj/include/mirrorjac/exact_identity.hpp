#pragma once

// The eigenvalue product identity for reflection-symmetric Jacobi matrices,
//
//   prod_{m,n} (mu_m - nu_n) = (-1)^{M(M-1)/2} (2 a_M)^M prod_{j<M} a_j^{2j},
//
// checked in floating point (log-magnitude + sign) and exactly (resultant
// of the two folded characteristic polynomials over big integers), plus the
// trigonometric identities behind the free-chain case.

#include <optional>
#include <string>
#include <vector>

#include "mirrorjac/jacobi.hpp"

namespace mirrorjac {

struct SignedLog {
  int sign = 1;         // -1, 0 or +1
  double log_abs = 0.;  // log|value|; meaningless when sign == 0
};

struct Theorem1Report {
  double lhs_log_abs = 0.0;
  int lhs_sign = 1;
  double rhs_log_abs = 0.0;
  int rhs_sign = 1;
  /// Present iff the spec is integer-valued; authoritative over residual.
  std::optional<bool> exact_match;
  /// Exact prod (mu - nu) as a decimal string, integer specs only.
  std::optional<std::string> resultant;
  /// |lhs_log_abs - rhs_log_abs|, plus 1 if the signs disagree.
  double residual = 0.0;
};

/// Sign and log-magnitude of the closed-form right-hand side.
/// DegeneracyError when some a_j == 0 (the product is then exactly zero).
SignedLog rhs_theorem1(const MirrorJacobiSpec& spec);

/// Sign and log-magnitude of prod (mu_m - nu_n) from the parity spectra.
/// Negative factors are counted explicitly. Pairs closer than the
/// degeneracy threshold are re-solved at 50, 100 and then 250 digits, with
/// the threshold scaled by the working epsilon. PreconditionError on
/// a_j == 0, DegeneracyError if a pair is still unresolved at 250 digits.
SignedLog lhs_theorem1(const MirrorJacobiSpec& spec, double rel_tol = kDefaultRelTol);

/// Exact right-hand side for an integer spec (zero allowed).
BigInt rhs_theorem1_exact(const MirrorJacobiSpec& spec);

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
/// `m` is row-major n x n.
BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t n);

/// Res(p, q) = det of the Sylvester matrix; coefficients ascending. For
/// monic p, q this equals prod_{i,j} (root_i(p) - root_j(q)).
BigInt sylvester_resultant(const std::vector<BigInt>& p, const std::vector<BigInt>& q);

struct ExactTheorem1 {
  BigInt resultant;
  BigInt rhs;
  bool match = false;
};

/// Res(P_even, P_odd) against the exact right-hand side. Requires an
/// integer spec (DomainError), all a_j != 0 and M <= 64 (PreconditionError).
ExactTheorem1 resultant_theorem1_detail(const MirrorJacobiSpec& spec);

/// True iff the exact resultant equals the closed form. A false return
/// means a bug, not a counterexample.
bool resultant_theorem1(const MirrorJacobiSpec& spec);

/// Floating check, plus the exact check when the spec is integer-valued.
Theorem1Report verify_theorem1(const MirrorJacobiSpec& spec,
                               double rel_tol = kDefaultRelTol);

// Free chain (a_j = -1, b_j = 2) and its trigonometric backing.

/// Signed value of prod_{m,n} [4 sin^2((2m-1)pi/(2(2M+1))) - 4 sin^2(2n pi/(2(2M+1)))]
/// in log form.
SignedLog free_chain_product(int M);

/// |log|LHS| - log(2^M)| for the free-chain product, plus 1 if the sign
/// differs from (-1)^{M(M+1)/2}.
double appendix_identity13(int M);

/// |prod_{m=1}^{2M+1} {4 sin^2[(2m-1)pi/(2(2M+1)) - alpha] - 4 sin^2[2n pi/(2(2M+1))]}
///   - 4 cos^2[alpha (2M+1)]|
double appendix_lemma3(int M, int n, double alpha);

struct ProductResidual {
  double absolute = 0.0;  // |prod - 2^{-M}|
  double log = 0.0;       // |sum log cos + M log 2|
};

/// prod_{k=1}^{M} cos(pi k / (2M+1)) against 2^{-M}.
ProductResidual appendix_cos_product(int M);

}  // namespace mirrorjac
