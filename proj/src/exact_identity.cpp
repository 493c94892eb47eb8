#include "mirrorjac/exact_identity.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mirrorjac/error.hpp"
#include "mirrorjac/numeric.hpp"

namespace mirrorjac {

namespace {

int parity_sign(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

void require_nonzero_couplings(const MirrorJacobiSpec& spec, const char* op) {
  if (spec.has_zero_coupling()) throw PreconditionError(op, "all a_j must be nonzero");
}

}  // namespace

SignedLog rhs_theorem1(const MirrorJacobiSpec& spec) {
  if (spec.has_zero_coupling()) {
    throw DegeneracyError("rhs_theorem1", "some a_j == 0: right-hand side is exactly 0");
  }
  const auto m = static_cast<long long>(spec.half_size());
  const double a_m = spec.a().back();
  SignedLog out;
  int sign = parity_sign(m * (m - 1) / 2);
  if (a_m < 0.0 && m % 2 == 1) sign = -sign;
  CompensatedSum log_abs;
  log_abs.add(static_cast<double>(m) * std::log(2.0 * std::abs(a_m)));
  for (long long j = 1; j < m; ++j) {
    log_abs.add(2.0 * static_cast<double>(j) *
                std::log(std::abs(spec.a()[static_cast<std::size_t>(j - 1)])));
  }
  out.sign = sign;
  out.log_abs = log_abs.value();
  return out;
}

namespace {

template <class Real>
Real char_poly_at(const std::vector<Real>& d, const std::vector<Real>& e, const Real& x) {
  Real prev = 1;
  Real cur = x - d[0];
  for (std::size_t k = 1; k < d.size(); ++k) {
    Real next = (x - d[k]) * cur - e[k - 1] * e[k - 1] * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Re-solves every eigenvalue of t in Real, seeded by the double values:
// Sturm bisection until the root is isolated, then TOMS 748 on det(x - T).
template <class Real>
std::vector<Real> refine_spectrum(const TridiagMatrix& t, const std::vector<double>& seeds) {
  const std::vector<Real> d(t.diag.begin(), t.diag.end());
  const std::vector<Real> e(t.offdiag.begin(), t.offdiag.end());
  const std::span<const Real> ds(d);
  const std::span<const Real> es(e);
  double scale = 1.0;
  for (double x : t.diag) scale = std::max(scale, std::abs(x));
  for (double x : t.offdiag) scale = std::max(scale, std::abs(x));
  const Real resolution = Real(4 * scale) * std::numeric_limits<Real>::epsilon();

  std::vector<Real> out;
  out.reserve(seeds.size());
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    Real step = Real(64.0 * std::numeric_limits<double>::epsilon() * scale);
    Real lo = Real(seeds[k]) - step;
    Real hi = Real(seeds[k]) + step;
    while (sturm_count<Real>(ds, es, lo) > k) {
      lo -= step;
      step *= 2;
    }
    while (sturm_count<Real>(ds, es, hi) <= k) {
      hi += step;
      step *= 2;
    }
    // Invariant: count(lo) <= k < count(hi). Shrink until only root k
    // remains inside.
    while (hi - lo > resolution &&
           (sturm_count<Real>(ds, es, lo) != k || sturm_count<Real>(ds, es, hi) != k + 1)) {
      const Real mid = (lo + hi) / 2;
      if (sturm_count<Real>(ds, es, mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const auto f = [&](const Real& x) { return char_poly_at(d, e, x); };
    const Real flo = f(lo);
    const Real fhi = f(hi);
    if (hi - lo <= resolution || flo == 0 || fhi == 0 || (flo < 0) == (fhi < 0)) {
      out.push_back(flo == 0 ? lo : fhi == 0 ? hi : (lo + hi) / 2);
      continue;
    }
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi,
        boost::math::tools::eps_tolerance<Real>(std::numeric_limits<Real>::digits - 3), iters);
    out.push_back((a + b) / 2);
  }
  return out;
}

// The product in Real arithmetic. Returns nullopt when some pair is still
// within the threshold scaled to Real's precision.
template <class Real>
std::optional<SignedLog> lhs_in_precision(const MirrorJacobiSpec& spec, const ParitySpectra& ps,
                                          double rel_tol, double diameter) {
  const std::vector<Real> mu = refine_spectrum<Real>(fold_even(spec), ps.mu.values);
  const std::vector<Real> nu = refine_spectrum<Real>(fold_odd(spec), ps.nu.values);
  const Real scaled_tol = Real(rel_tol) * (std::numeric_limits<Real>::epsilon() /
                                           Real(std::numeric_limits<double>::epsilon()));
  const Real threshold = Real(1e3) * scaled_tol * Real(diameter);
  SignedLogProduct prod;
  for (const Real& m : mu) {
    for (const Real& n : nu) {
      const Real diff = m - n;
      if (abs(diff) <= threshold) return std::nullopt;
      prod.multiply_log(diff < 0 ? -1 : 1, static_cast<double>(log(abs(diff))));
    }
  }
  return SignedLog{prod.sign(), prod.log_abs()};
}

}  // namespace

SignedLog lhs_theorem1(const MirrorJacobiSpec& spec, double rel_tol) {
  require_nonzero_couplings(spec, "lhs_theorem1");
  const ParitySpectra ps = parity_spectra(spec, rel_tol);
  const double lo = std::min(ps.mu.values.front(), ps.nu.values.front());
  const double hi = std::max(ps.mu.values.back(), ps.nu.values.back());
  const double threshold = degeneracy_threshold(rel_tol, hi - lo);

  SignedLogProduct prod;
  bool resolved = true;
  for (double mu : ps.mu.values) {
    for (double nu : ps.nu.values) {
      const double diff = mu - nu;
      if (std::abs(diff) <= threshold) resolved = false;
      prod.multiply(diff);
    }
  }
  if (resolved) return {prod.sign(), prod.log_abs()};

  // Even and odd levels that agree to double precision (states localised
  // away from the centre) are separated in extended precision.
  using namespace boost::multiprecision;
  if (auto r = lhs_in_precision<cpp_bin_float_50>(spec, ps, rel_tol, hi - lo)) return *r;
  if (auto r = lhs_in_precision<cpp_bin_float_100>(spec, ps, rel_tol, hi - lo)) return *r;
  using Float250 = number<cpp_bin_float<250>>;
  if (auto r = lhs_in_precision<Float250>(spec, ps, rel_tol, hi - lo)) return *r;
  throw DegeneracyError("lhs_theorem1",
                        "|mu - nu| below the degeneracy threshold at 250 digits; some a_j is near 0");
}

BigInt rhs_theorem1_exact(const MirrorJacobiSpec& spec) {
  if (!spec.is_integer()) throw DomainError("rhs_theorem1_exact", "spec must be integer-valued");
  const std::size_t m = spec.half_size();
  BigInt value = pow(BigInt(2) * BigInt(static_cast<long long>(spec.a().back())),
                     static_cast<unsigned>(m));
  for (std::size_t j = 1; j < m; ++j) {
    value *= pow(BigInt(static_cast<long long>(spec.a()[j - 1])), static_cast<unsigned>(2 * j));
  }
  const auto mm = static_cast<long long>(m);
  if (parity_sign(mm * (mm - 1) / 2) < 0) value = -value;
  return value;
}

BigInt bareiss_determinant(std::vector<BigInt> a, std::size_t n) {
  if (a.size() != n * n) throw DomainError("bareiss_determinant", "matrix is not n x n");
  if (n == 0) return BigInt(1);
  const auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * n + j]; };
  int sign = 1;
  BigInt prev_pivot = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return BigInt(0);
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    const BigInt& pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact division: Sylvester's identity guarantees divisibility.
        at(i, j) = (at(i, j) * pivot - at(i, k) * at(k, j)) / prev_pivot;
      }
      at(i, k) = 0;
    }
    prev_pivot = pivot;
  }
  BigInt det = at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

BigInt sylvester_resultant(const std::vector<BigInt>& p, const std::vector<BigInt>& q) {
  if (p.empty() || q.empty()) throw DomainError("sylvester_resultant", "empty polynomial");
  const std::size_t dp = p.size() - 1;
  const std::size_t dq = q.size() - 1;
  const std::size_t n = dp + dq;
  if (n == 0) return BigInt(1);
  std::vector<BigInt> syl(n * n, BigInt(0));
  // dq shifted rows of p, then dp shifted rows of q; descending powers.
  for (std::size_t r = 0; r < dq; ++r) {
    for (std::size_t k = 0; k <= dp; ++k) syl[r * n + r + k] = p[dp - k];
  }
  for (std::size_t r = 0; r < dp; ++r) {
    for (std::size_t k = 0; k <= dq; ++k) syl[(dq + r) * n + r + k] = q[dq - k];
  }
  return bareiss_determinant(std::move(syl), n);
}

ExactTheorem1 resultant_theorem1_detail(const MirrorJacobiSpec& spec) {
  if (!spec.is_integer()) throw DomainError("resultant_theorem1", "spec must be integer-valued");
  require_nonzero_couplings(spec, "resultant_theorem1");
  if (spec.half_size() > kMaxExactDimension) {
    throw PreconditionError("resultant_theorem1", "exact path is limited to M <= 64");
  }
  ExactTheorem1 out;
  out.resultant = sylvester_resultant(char_poly_exact(fold_even(spec)),
                                      char_poly_exact(fold_odd(spec)));
  out.rhs = rhs_theorem1_exact(spec);
  out.match = out.resultant == out.rhs;
  return out;
}

bool resultant_theorem1(const MirrorJacobiSpec& spec) {
  return resultant_theorem1_detail(spec).match;
}

Theorem1Report verify_theorem1(const MirrorJacobiSpec& spec, double rel_tol) {
  Theorem1Report r;
  const SignedLog lhs = lhs_theorem1(spec, rel_tol);
  const SignedLog rhs = rhs_theorem1(spec);
  r.lhs_sign = lhs.sign;
  r.lhs_log_abs = lhs.log_abs;
  r.rhs_sign = rhs.sign;
  r.rhs_log_abs = rhs.log_abs;
  r.residual = std::abs(lhs.log_abs - rhs.log_abs) + (lhs.sign == rhs.sign ? 0.0 : 1.0);
  if (spec.is_integer() && spec.half_size() <= kMaxExactDimension) {
    const ExactTheorem1 exact = resultant_theorem1_detail(spec);
    r.exact_match = exact.match;
    r.resultant = exact.resultant.str();
  }
  return r;
}

SignedLog free_chain_product(int M) {
  if (M < 1) throw DomainError("free_chain_product", "M must be >= 1");
  const double unit = kPi / (2.0 * (2.0 * M + 1.0));
  SignedLogProduct prod;
  for (int m = 1; m <= M; ++m) {
    for (int n = 1; n <= M; ++n) {
      // 4 sin^2 x - 4 sin^2 y = 4 sin(x - y) sin(x + y)
      const double minus = static_cast<double>(2 * m - 1 - 2 * n) * unit;
      const double plus = static_cast<double>(2 * m - 1 + 2 * n) * unit;
      prod.multiply(4.0 * std::sin(minus) * std::sin(plus));
    }
  }
  return {prod.sign(), prod.log_abs()};
}

double appendix_identity13(int M) {
  const SignedLog lhs = free_chain_product(M);
  const long long m = M;
  const int rhs_sign = parity_sign(m * (m + 1) / 2);
  const double rhs_log = static_cast<double>(M) * std::log(2.0);
  return std::abs(lhs.log_abs - rhs_log) + (lhs.sign == rhs_sign ? 0.0 : 1.0);
}

double appendix_lemma3(int M, int n, double alpha) {
  if (M < 1) throw DomainError("appendix_lemma3", "M must be >= 1");
  const int width = 2 * M + 1;
  const double unit = kPi / (2.0 * width);
  double lhs = 1.0;
  for (int m = 1; m <= width; ++m) {
    const double minus = static_cast<double>(2 * m - 1 - 2 * n) * unit - alpha;
    const double plus = static_cast<double>(2 * m - 1 + 2 * n) * unit - alpha;
    lhs *= 4.0 * std::sin(minus) * std::sin(plus);
  }
  const double c = std::cos(alpha * width);
  return std::abs(lhs - 4.0 * c * c);
}

ProductResidual appendix_cos_product(int M) {
  if (M < 1) throw DomainError("appendix_cos_product", "M must be >= 1");
  double prod = 1.0;
  CompensatedSum log_sum;
  for (int k = 1; k <= M; ++k) {
    const double c = std::cos(kPi * k / (2.0 * M + 1.0));
    prod *= c;
    log_sum.add(std::log(c));
  }
  ProductResidual r;
  r.absolute = std::abs(prod - std::ldexp(1.0, -M));
  r.log = std::abs(log_sum.value() + M * std::log(2.0));
  return r;
}

}  // namespace mirrorjac
