#include "mirrorjac/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "mirrorjac/error.hpp"
#include "mirrorjac/numeric.hpp"

namespace mirrorjac {

namespace {

template <class F>
double bracketed_root(F f, double lo, double hi, const char* op) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw NumericalError(op, "no sign change on [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
  }
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (a + b);
}

// 2 cos(k pi/2) + sign A sin(k pi/2) / k, i.e. the matching condition
// divided by k so that k = 0 is not a spurious root.
double matching(double k, double A, int sign) {
  const double half = 0.5 * kPi * k;
  const double sinc = k == 0.0 ? 0.5 * kPi : std::sin(half) / k;
  return 2.0 * std::cos(half) + sign * A * sinc;
}

double even_level(double A, int sign, std::size_t m) {
  const double mm = static_cast<double>(m);
  const auto f = [&](double k) { return matching(k, A, sign); };
  if (sign > 0) {
    const double k = bracketed_root(f, 2.0 * mm - 1.0, 2.0 * mm, "delta_eigenvalues");
    return k * k;
  }
  if (m > 1) {
    const double k = bracketed_root(f, 2.0 * mm - 2.0, 2.0 * mm - 1.0, "delta_eigenvalues");
    return k * k;
  }
  const double at_zero = 2.0 - 0.5 * kPi * A;
  if (at_zero > 0.0) {
    const double k = bracketed_root(f, 0.0, 1.0, "delta_eigenvalues");
    return k * k;
  }
  if (at_zero == 0.0) return 0.0;
  // Bound state below zero: psi = sinh(kappa z) on the left half.
  const auto g = [&](double kappa) { return A * std::tanh(0.5 * kPi * kappa) - 2.0 * kappa; };
  const double lo = 1e-3 * std::min(1.0, -at_zero);
  const double kappa = bracketed_root(g, lo, 0.5 * A, "delta_eigenvalues");
  return -kappa * kappa;
}

PairingResult pairing_from_logs(Pairing pairing, const SignedLogProduct& lhs,
                                const SignedLogProduct& rhs) {
  PairingResult out;
  out.pairing = pairing;
  out.lhs_log = lhs.log_abs();
  out.lhs_sign = lhs.sign();
  out.rhs_log = rhs.log_abs();
  out.rhs_sign = rhs.sign();
  const double diff = out.lhs_log - out.rhs_log;
  out.gap = out.lhs_sign == out.rhs_sign ? std::abs(std::expm1(diff)) : std::exp(diff) + 1.0;
  return out;
}

double signed_log_ratio(const PairingResult& r) { return r.lhs_log - r.rhs_log; }

}  // namespace

ContinuumSpectra delta_eigenvalues(double A, int sign, std::size_t N) {
  if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("delta_eigenvalues", "A must be > 0");
  if (sign != 1 && sign != -1) throw DomainError("delta_eigenvalues", "sign must be +1 or -1");
  if (N == 0) throw DomainError("delta_eigenvalues", "N must be >= 1");
  ContinuumSpectra out;
  out.A = A;
  out.sign = sign;
  out.count = N;
  out.mu.reserve(N);
  out.nu.reserve(N);
  for (std::size_t m = 1; m <= N; ++m) {
    out.mu.push_back(even_level(A, sign, m));
    const double two_m = 2.0 * static_cast<double>(m);
    out.nu.push_back(two_m * two_m);
  }
  return out;
}

const char* to_string(Pairing pairing) noexcept {
  return pairing == Pairing::printed ? "printed" : "parity";
}

PairingResult pairing_product(const ContinuumSpectra& plus, const ContinuumSpectra& minus,
                              Pairing pairing, std::size_t N) {
  if (plus.mu.size() < N || plus.nu.size() < N || minus.mu.size() < N || minus.nu.size() < N) {
    throw DomainError("pairing_product", "spectra hold fewer than N levels");
  }
  SignedLogProduct lhs;
  SignedLogProduct rhs;
  for (std::size_t m = 1; m <= N; ++m) {
    for (std::size_t n = 1; n <= N; ++n) {
      const double mm = static_cast<double>(m);
      const double nn = static_cast<double>(n);
      const double denom = pairing == Pairing::printed
                               ? (2 * mm) * (2 * mm) - (2 * nn - 1) * (2 * nn - 1)
                               : (2 * mm - 1) * (2 * mm - 1) - (2 * nn) * (2 * nn);
      const double up = plus.mu[m - 1] - plus.nu[n - 1];
      const double down = minus.mu[m - 1] - minus.nu[n - 1];
      if (up == 0.0 || down == 0.0) {
        throw DegeneracyError("pairing_product", "mu_" + std::to_string(m) +
                                                     " coincides with nu_" + std::to_string(n));
      }
      lhs.multiply(up);
      lhs.multiply(1.0 / denom);
      rhs.multiply(denom);
      rhs.multiply(1.0 / down);
    }
  }
  return pairing_from_logs(pairing, lhs, rhs);
}

HypothesisReport hypothesis_product(double A, std::size_t N) {
  if (!(A >= 0.1 && A <= 10.0)) throw DomainError("hypothesis_product", "A must lie in [0.1, 10]");
  if (N < 10) throw DomainError("hypothesis_product", "N must be >= 10");
  const ContinuumSpectra plus = delta_eigenvalues(A, 1, N);
  const ContinuumSpectra minus = delta_eigenvalues(A, -1, N);

  HypothesisReport out;
  out.A = A;
  out.N = N;
  out.printed = pairing_product(plus, minus, Pairing::printed, N);
  out.parity = pairing_product(plus, minus, Pairing::parity, N);

  const std::size_t half = N / 2;
  const auto tail = [&](Pairing pairing, const PairingResult& full) {
    const double coarse = signed_log_ratio(pairing_product(plus, minus, pairing, half));
    const double fine = signed_log_ratio(full);
    const double h_ratio = static_cast<double>(N) / static_cast<double>(half);
    const double limit = fine + (fine - coarse) / (h_ratio * h_ratio - 1.0);
    return std::abs(fine - limit);
  };
  out.printed_tail = tail(Pairing::printed, out.printed);
  out.parity_tail = tail(Pairing::parity, out.parity);
  return out;
}

}  // namespace mirrorjac
