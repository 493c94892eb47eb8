#pragma once

// Reflection-symmetric Jacobi matrices: construction, folding into the
// even/odd half-size operators, Sturm-count bisection spectra, exact
// characteristic polynomials and parity classification.
//
// Documentation uses 1-based indices (a_1..a_M, b_1..b_M); storage is
// 0-based, so a_j lives at a()[j - 1].

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mirrorjac {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kDefaultRelTol = 1e-12;

/// The 2M free parameters of a 2M x 2M Jacobi matrix that is symmetric
/// about its secondary diagonal: b_{N+1-j} = b_j, a_{N-j} = a_j, N = 2M.
class MirrorJacobiSpec {
 public:
  /// Throws DomainError if a and b differ in length, are empty, or hold
  /// non-finite values. Zero couplings are accepted.
  MirrorJacobiSpec(std::vector<double> a, std::vector<double> b);

  std::size_t half_size() const noexcept { return a_.size(); }
  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<double>& b() const noexcept { return b_; }

  bool has_zero_coupling() const noexcept;
  /// True when every entry is an integer representable exactly in a double.
  bool is_integer() const noexcept;

  friend bool operator==(const MirrorJacobiSpec&, const MirrorJacobiSpec&) = default;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Symmetric tridiagonal matrix; only one off-diagonal is stored.
struct TridiagMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  TridiagMatrix() = default;
  /// Throws DomainError unless offdiag.size() + 1 == diag.size() >= 1.
  TridiagMatrix(std::vector<double> d, std::vector<double> e);

  std::size_t size() const noexcept { return diag.size(); }

  friend bool operator==(const TridiagMatrix&, const TridiagMatrix&) = default;
};

struct Spectrum {
  std::vector<double> values;  // ascending
  bool simple = true;          // no two values within the degeneracy threshold
};

struct ParitySpectra {
  Spectrum mu;  // reflection-even eigenvalues
  Spectrum nu;  // reflection-odd eigenvalues
};

TridiagMatrix expand(const MirrorJacobiSpec& spec);

/// M x M operator on even vectors: bottom-right entry b_M + a_M.
TridiagMatrix fold_even(const MirrorJacobiSpec& spec);

/// M x M operator on odd vectors: bottom-right entry b_M - a_M.
TridiagMatrix fold_odd(const MirrorJacobiSpec& spec);

/// Number of eigenvalues of the tridiagonal matrix (d, e) that are <= x.
///
/// Counts negative pivots of the LDL^T factorisation of T - x. An exactly
/// zero pivot is taken as the limit from x + 0 (counted, and the next pivot
/// becomes +infinity), which keeps the count exact for exact Scalar types
/// such as boost rationals.
template <class Scalar>
std::size_t sturm_count(std::span<const Scalar> d, std::span<const Scalar> e,
                        const Scalar& x) {
  enum class Prev { fresh, normal, zero_minus };
  std::size_t count = 0;
  Scalar pivot{};
  Prev state = Prev::fresh;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (state == Prev::zero_minus) {
      // d - x - e^2 / 0^- = +infinity: not negative, and the following
      // pivot restarts as d - x.
      state = Prev::fresh;
      continue;
    }
    if (state == Prev::fresh) {
      pivot = d[k] - x;
    } else {
      const Scalar& off = e[k - 1];
      pivot = d[k] - x - (off * off) / pivot;
    }
    if (pivot == Scalar(0)) {
      ++count;
      state = (k + 1 < d.size() && e[k] != Scalar(0)) ? Prev::zero_minus
                                                       : Prev::fresh;
      continue;
    }
    if (pivot < Scalar(0)) ++count;
    state = Prev::normal;
  }
  return count;
}

std::size_t sturm_count(const TridiagMatrix& t, double x);

/// All eigenvalues, ascending, bisected on the Sturm count down to its
/// resolution of about eps * ||T||. rel_tol only sets the degeneracy
/// threshold that decides `simple`. Throws DomainError on non-finite entries,
/// std::invalid_argument when rel_tol <= 0.
Spectrum eigenvalues(const TridiagMatrix& t, double rel_tol = kDefaultRelTol);

/// The index-th smallest eigenvalue (0-based) without computing the rest.
double eigenvalue_at(const TridiagMatrix& t, std::size_t index,
                     double rel_tol = kDefaultRelTol);

/// Separation below which two eigenvalues are treated as coincident:
/// 1e3 * rel_tol * spectral diameter.
double degeneracy_threshold(double rel_tol, double diameter) noexcept;

ParitySpectra parity_spectra(const MirrorJacobiSpec& spec,
                             double rel_tol = kDefaultRelTol);

/// Monic det(lambda - T) by the three-term recurrence, in arbitrary
/// precision. Coefficients in ascending powers; result has size n + 1.
template <class Scalar>
std::vector<Scalar> char_poly(std::span<const Scalar> d,
                              std::span<const Scalar> e) {
  std::vector<Scalar> prev{Scalar(1)};  // p_{k-1}
  std::vector<Scalar> prev2;            // p_{k-2}
  for (std::size_t k = 0; k < d.size(); ++k) {
    std::vector<Scalar> next(prev.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + 1] += prev[i];
      next[i] -= d[k] * prev[i];
    }
    if (k > 0) {
      const Scalar e2 = e[k - 1] * e[k - 1];
      for (std::size_t i = 0; i < prev2.size(); ++i) next[i] -= e2 * prev2[i];
    }
    prev2 = std::move(prev);
    prev = std::move(next);
  }
  return prev;
}

inline constexpr std::size_t kMaxExactDimension = 64;

/// char_poly over BigInt. Entries must be integers and n <= 64; otherwise
/// DomainError.
std::vector<BigInt> char_poly_exact(const TridiagMatrix& t);

/// kappa_n for each full-matrix eigenvalue in ascending order: +1 when it
/// belongs to the even spectrum, -1 when odd. Requires every a_j != 0
/// (PreconditionError); throws DegeneracyError when an even and an odd
/// eigenvalue are closer than the degeneracy threshold.
std::vector<int> parity_signs(const MirrorJacobiSpec& spec,
                              double rel_tol = kDefaultRelTol);

}  // namespace mirrorjac
