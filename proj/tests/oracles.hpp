#pragma once

// Reference computations that share no code path with the library: dense
// eigensolves, characteristic-polynomial root bracketing, DFT recovery of
// polynomial coefficients, grid-based principal values and the
// finite-difference delta operator.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "mirrorjac/jacobi.hpp"
#include "mirrorjac/scattering.hpp"

namespace oracle {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

inline std::vector<double> dense_eigenvalues(const mirrorjac::TridiagMatrix& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = t.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      m(i, i + 1) = m(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

// det(x - T) by the three-term recurrence.
inline double char_poly_value(const mirrorjac::TridiagMatrix& t, double x) {
  double prev = 1.0;
  double cur = x - t.diag[0];
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double next = (x - t.diag[k]) * cur - t.offdiag[k - 1] * t.offdiag[k - 1] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Scans [lo, hi] on a uniform grid for sign changes of det(x - T) and
// bisects each bracket. Assumes well-separated simple eigenvalues.
inline std::vector<double> bracketed_eigenvalues(const mirrorjac::TridiagMatrix& t,
                                                 std::size_t grid = 200000) {
  double lo = t.diag[0];
  double hi = t.diag[0];
  for (std::size_t i = 0; i < t.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.offdiag[i - 1]);
    if (i + 1 < t.size()) r += std::abs(t.offdiag[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  lo -= 1.0;
  hi += 1.0;
  std::vector<double> roots;
  double x0 = lo;
  double f0 = char_poly_value(t, x0);
  for (std::size_t k = 1; k <= grid; ++k) {
    const double x1 = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid);
    const double f1 = char_poly_value(t, x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      double a = x0;
      double b = x1;
      double fa = f0;
      for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = char_poly_value(t, mid);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

// Coefficients of F(z) = W_0(phi, f) recovered from its values on K roots
// of unity (K > degree).
inline std::vector<double> wronskian_dft_coefficients(const mirrorjac::Potential& pot,
                                                      std::size_t K) {
  std::vector<cd> samples(K);
  for (std::size_t m = 0; m < K; ++m) {
    const cd z = std::polar(1.0, 2.0 * pi * static_cast<double>(m) / static_cast<double>(K));
    const cd lambda = 2.0 - z - 1.0 / z;
    const auto phi = mirrorjac::fundamental_solution<cd>(pot, lambda, 2);
    const auto f = mirrorjac::jost_solution(pot, z, 2);
    samples[m] = mirrorjac::wronskian<cd>(phi, f, 0);
  }
  std::vector<double> coeffs(K);
  for (std::size_t k = 0; k < K; ++k) {
    cd acc = 0.0;
    for (std::size_t m = 0; m < K; ++m) {
      acc += samples[m] * std::polar(1.0, -2.0 * pi * static_cast<double>(m * k) /
                                              static_cast<double>(K));
    }
    coeffs[k] = (acc / static_cast<double>(K)).real();
  }
  return coeffs;
}

// PV int_a^b g(x) / (x - x0) dx with midpoint nodes placed symmetrically
// about x0 on [x0 - d, x0 + d] and an ordinary midpoint rule elsewhere.
inline double symmetric_grid_pv(const std::function<double(double)>& g, double a, double b,
                                double x0, std::size_t n_half) {
  const double d = std::min(x0 - a, b - x0);
  const double h = d / static_cast<double>(n_half);
  double sum = 0.0;
  for (std::size_t k = 0; k < n_half; ++k) {
    const double off = (static_cast<double>(k) + 0.5) * h;
    sum += (g(x0 + off) - g(x0 - off)) / off * h;
  }
  const double rest_lo = x0 - d;
  const double rest_hi = x0 + d;
  const auto plain = [&](double lo, double hi) {
    if (hi - lo <= 0.0) return 0.0;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h));
    const double step = (hi - lo) / static_cast<double>(n);
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double x = lo + (static_cast<double>(k) + 0.5) * step;
      s += g(x) / (x - x0) * step;
    }
    return s;
  };
  return sum + plain(a, rest_lo) + plain(rest_hi, b);
}

// Average of the +-i eps limits of int_0^pi dq / (omega(q) - omega(k))^nu:
// composite Simpson at finite eps, then two Richardson steps in eps^2.
inline double pv_omega_power_eps(double k, int nu) {
  const double wk = 2.0 - 2.0 * std::cos(k);
  const auto at_eps = [&](double eps) {
    const std::size_t n = 200000;
    const double h = pi / static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const cd q(static_cast<double>(i) * h, eps);
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      s += w * std::pow(2.0 - 2.0 * std::cos(q) - wk, -nu).real();
    }
    return s * h / 3.0;
  };
  const double e = 0.08;
  const double f1 = at_eps(e);
  const double f2 = at_eps(e / 2);
  const double f3 = at_eps(e / 4);
  const double r1 = (4.0 * f2 - f1) / 3.0;
  const double r2 = (4.0 * f3 - f2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

// Eigenvalue `index` (0-based, ascending) of the finite-difference operator
// -psi'' + sign A delta(z - pi/2) psi on (0, pi), Dirichlet ends, n
// intervals; the delta is a single node of weight A / h.
inline double fd_delta_eigenvalue(double A, int sign, std::size_t n, std::size_t index) {
  const double h = pi / static_cast<double>(n);
  const std::size_t size = n - 1;
  std::vector<double> d(size, 2.0 / (h * h));
  d[n / 2 - 1] += sign * A / h;
  const double off2 = 1.0 / (h * h * h * h);
  const auto count_below = [&](double x) {
    std::size_t c = 0;
    double q = d[0] - x;
    if (q < 0.0) ++c;
    for (std::size_t i = 1; i < size; ++i) {
      if (q == 0.0) q = 1e-300;
      q = d[i] - x - off2 / q;
      if (q < 0.0) ++c;
    }
    return c;
  };
  double lo = -A * A - 1.0;
  double hi = 4.0 / (h * h) + A / h + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
