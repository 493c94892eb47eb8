#include "mirrorjac/theorem2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "mirrorjac/error.hpp"
#include "mirrorjac/numeric.hpp"

namespace mirrorjac {

namespace {

constexpr std::size_t kMaxSegments = 400;

struct Segment {
  double a, b, value, error, l1;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// Globally adaptive Gauss-Kronrod: always bisect the segment with the
// largest error until the total error drops below rel_tol times the L1
// norm. Boost's own recursion halves an absolute budget at every level,
// which never terminates early on integrands carrying rounding noise from
// the subtracted pole.
template <class F>
Segment kronrod_segment(F& f, double a, double b) {
  Segment s{a, b, 0.0, 0.0, 0.0};
  s.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0,
                                                                          &s.error, &s.l1);
  s.error *= 0.5 * (b - a);
  return s;
}

template <class F>
QuadratureValue kronrod(F&& f, double a, double b, double rel_tol) {
  // Segments narrower than this are only rounding noise around a
  // removable singularity; they are kept but never split again.
  const double min_width =
      std::max(1e-9 * (b - a), 1e3 * std::numeric_limits<double>::epsilon() *
                                   std::max(std::abs(a), std::abs(b)));
  std::priority_queue<Segment> heap;
  std::vector<Segment> settled;
  heap.push(kronrod_segment(f, a, b));
  double error = heap.top().error;
  double l1 = heap.top().l1;
  while (!heap.empty() && heap.size() + settled.size() < kMaxSegments && error > rel_tol * l1) {
    const Segment worst = heap.top();
    heap.pop();
    if (worst.b - worst.a < min_width) {
      settled.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod_segment(f, worst.a, mid);
    const Segment right = kronrod_segment(f, mid, worst.b);
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  while (!heap.empty()) {
    settled.push_back(heap.top());
    heap.pop();
  }
  std::sort(settled.begin(), settled.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  CompensatedSum value;
  CompensatedSum err;
  CompensatedSum norm;
  for (const Segment& s : settled) {
    value.add(s.value);
    err.add(s.error);
    norm.add(s.l1);
  }
  // Rounding floor of the summation itself.
  return {value.value(), err.value() + 64.0 * std::numeric_limits<double>::epsilon() * norm.value()};
}

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussRule gauss_legendre(unsigned n) {
  const std::vector<double> positive = boost::math::legendre_p_zeros<double>(static_cast<int>(n));
  GaussRule rule;
  for (double x : positive) {
    const double dp = boost::math::legendre_p_prime(static_cast<int>(n), x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
    if (x != 0.0) {
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

void require_admissible(const JostPolynomial& jost, const char* op) {
  if (!jost.admissible) throw PreconditionError(op, "potential is not admissible");
}

double momentum_of(double lambda) { return std::acos(std::clamp(1.0 - 0.5 * lambda, -1.0, 1.0)); }

}  // namespace

QuadratureValue pv_integral_I_detail(const PhaseFunction& phase, double Lambda, double rel_tol) {
  if (!(Lambda > 0.0 && Lambda < 4.0)) {
    throw DomainError("pv_integral_I", "Lambda must lie in (0, 4)");
  }
  const double p0 = momentum_of(Lambda);
  const double delta0 = phase.eta(p0);
  const auto regular = [&](double p) {
    return (phase.eta(p) - delta0) * 2.0 * std::sin(p) / omega_difference(p, p0);
  };
  const QuadratureValue left = kronrod(regular, 0.0, p0, rel_tol);
  const QuadratureValue right = kronrod(regular, p0, kPi, rel_tol);
  return {left.value + right.value + delta0 * std::log((4.0 - Lambda) / Lambda),
          left.error + right.error};
}

double pv_integral_I(const PhaseFunction& phase, double Lambda) {
  return pv_integral_I_detail(phase, Lambda).value;
}

namespace {

// Inner integral at the momentum p0 of Lambda, so that callers holding p0
// do not lose it to acos(1 - Lambda/2) when Lambda is tiny.
QuadratureValue delta_prime_pv_at(const PhaseFunction& phase, double p0, double rel_tol) {
  // log((4 - Lambda) / Lambda) without cancellation near Lambda = 4.
  const double log_ratio = 2.0 * std::log(std::abs(std::cos(0.5 * p0) / std::sin(0.5 * p0)));
  const double slope0 = phase.eta_derivative(p0) / (2.0 * std::sin(p0));  // delta'(Lambda)
  // delta'(lambda) d lambda = eta'(p) dp.
  const auto regular = [&](double p) {
    return (phase.eta_derivative(p) - 2.0 * std::sin(p) * slope0) / omega_difference(p, p0);
  };
  const QuadratureValue left = kronrod(regular, 0.0, p0, rel_tol);
  const QuadratureValue right = kronrod(regular, p0, kPi, rel_tol);
  return {left.value + right.value + slope0 * log_ratio, left.error + right.error};
}

}  // namespace

QuadratureValue pv_integral_delta_prime(const PhaseFunction& phase, double Lambda,
                                        double rel_tol) {
  if (!(Lambda > 0.0 && Lambda < 4.0)) {
    throw DomainError("pv_integral_delta_prime", "Lambda must lie in (0, 4)");
  }
  return delta_prime_pv_at(phase, momentum_of(Lambda), rel_tol);
}

Eq55Terms eq55_terms(const PhaseFunction& phase, double abs_tol) {
  require_admissible(phase.jost(), "check_eq55");
  Eq55Terms out;

  // lambda = 2 - 2 cos p turns the first integrand into eta(p) cot p,
  // bounded at both ends because eta(0) = eta(pi) = 0.
  const QuadratureValue single = kronrod(
      [&](double p) { return phase.eta(p) * std::cos(p) / std::sin(p); }, 0.0, kPi, 1e-13);
  out.single = single.value;

  // Outer integral over p1 with p1 = (pi/2)(1 - cos t) to soften the
  // p log p behaviour at the endpoints.
  const auto outer = [&](double t, double* inner_error) {
    const double p = 0.5 * kPi * (1.0 - std::cos(t));
    const double jac = 0.5 * kPi * std::sin(t);
    const double s = std::sin(p);
    if (!(p > 0.0 && p < kPi) || s == 0.0) return 0.0;  // eta vanishes there
    const QuadratureValue inner = delta_prime_pv_at(phase, p, 1e-12);
    const double weight = phase.eta(p) * 2.0 * s * jac;
    *inner_error += std::abs(weight * inner.error);
    return weight * inner.value;
  };

  double previous = std::numeric_limits<double>::quiet_NaN();
  double change = std::numeric_limits<double>::infinity();
  double inner_error = 0.0;
  for (unsigned n = 16; n <= 2048; n *= 2) {
    const GaussRule rule = gauss_legendre(n);
    CompensatedSum acc;
    double err = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = 0.5 * kPi * (rule.nodes[i] + 1.0);
      double e = 0.0;
      acc.add(0.5 * kPi * rule.weights[i] * outer(t, &e));
      err += 0.5 * kPi * rule.weights[i] * e;
    }
    const double value = acc.value() / kPi;
    out.outer_nodes = n;
    inner_error = err / kPi;
    if (std::isfinite(previous)) {
      change = std::abs(value - previous);
      previous = value;
      if (change < 0.1 * abs_tol) break;
    } else {
      previous = value;
    }
  }
  out.double_ = previous;
  out.residual = std::abs(out.single + out.double_);
  out.estimate = change + inner_error + single.error +
                 64.0 * std::numeric_limits<double>::epsilon() *
                     (std::abs(out.single) + std::abs(out.double_));
  return out;
}

double check_eq55(const PhaseFunction& phase, double abs_tol) {
  return eq55_terms(phase, abs_tol).residual;
}

std::complex<double> eq56_sum(const JostPolynomial& jost, std::size_t n_quad) {
  require_admissible(jost, "check_eq56");
  if (n_quad < 512 || !std::has_single_bit(n_quad)) {
    throw PreconditionError("check_eq56", "n_quad must be a power of two >= 512");
  }
  const cdouble ends = std::log(jost.value_at_one) + std::log(jost.value_at_minus_one);

  // Continuous branch of arg F(e^{ip}) starting from arg F(1) = 0.
  std::complex<double> acc = 0.0;
  CompensatedSum re;
  CompensatedSum im;
  double prev_arg = 0.0;
  double unwrapped = 0.0;
  for (std::size_t k = 0; k < n_quad; ++k) {
    const double p = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n_quad);
    const cdouble z = k == 0 ? cdouble(1.0, 0.0) : std::polar(1.0, p);
    const auto [value, deriv] = poly::evaluate_with_derivative(jost.coeffs, z);
    const double arg = std::arg(value);
    if (k > 0) {
      double step = arg - prev_arg;
      step -= 2.0 * kPi * std::round(step / (2.0 * kPi));
      unwrapped += step;
    }
    prev_arg = arg;
    // log F(1/z) = log conj F(z) on the unit circle.
    const cdouble log_conj(std::log(std::abs(value)), -unwrapped);
    const cdouble term = log_conj * z * deriv / value;
    re.add(term.real());
    im.add(term.imag());
  }
  acc = cdouble(re.value(), im.value()) / static_cast<double>(n_quad);
  return ends + acc;
}

double check_eq56(const JostPolynomial& jost, std::size_t n_quad) {
  return std::abs(eq56_sum(jost, n_quad));
}

std::complex<double> eq57_product(const JostPolynomial& jost) {
  const auto& roots = jost.roots;
  // Non-real roots of a real polynomial must pair with their conjugates.
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const cdouble z = roots[i];
    if (used[i] || std::abs(z.imag()) <= 1e-12 * std::abs(z)) continue;
    bool paired = false;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i || used[j]) continue;
      if (std::abs(roots[j] - std::conj(z)) <= 1e-8 * std::abs(z)) {
        used[i] = used[j] = true;
        paired = true;
        break;
      }
    }
    if (!paired) {
      throw NumericalError("check_eq57", "non-real root without a conjugate partner");
    }
  }

  std::vector<cdouble> corrections;
  for (std::size_t m = 0; m < roots.size(); ++m) {
    for (std::size_t n = m + 1; n < roots.size(); ++n) {
      corrections.push_back(1.0 / (roots[n] * roots[m]));
    }
  }
  std::sort(corrections.begin(), corrections.end(),
            [](const cdouble& x, const cdouble& y) { return std::abs(x) < std::abs(y); });
  cdouble product = 1.0;
  for (const cdouble& w : corrections) product *= (1.0 - w);
  return product;
}

double check_eq57(const JostPolynomial& jost) {
  require_admissible(jost, "check_eq57");
  return std::abs(eq57_product(jost) - 1.0);
}

double example_identity_vieta(double v1, double v2) {
  if (v2 == 0.0) throw DomainError("example_identity_vieta", "v2 must be nonzero");
  const double s1 = -v1;
  const double s2 = (v1 + v2) / v2;
  const double s3 = -1.0 / v2;
  return std::abs((s3 * s3 - s3 * s1 + s2 - 1.0) / (s3 * s3) - 1.0);
}

double example_identity_roots(const JostPolynomial& jost) {
  if (jost.roots.size() != 3) {
    throw DomainError("example_identity_roots", "needs a cubic (J = 2) Jost polynomial");
  }
  const cdouble z1 = jost.roots[0];
  const cdouble z2 = jost.roots[1];
  const cdouble z3 = jost.roots[2];
  const cdouble s1 = z1 + z2 + z3;
  const cdouble s2 = z1 * z2 + z1 * z3 + z2 * z3;
  const cdouble s3 = z1 * z2 * z3;
  return std::abs((s3 * s3 - s3 * s1 + s2 - 1.0) / (s3 * s3) - 1.0);
}

Theorem2Report verify_theorem2(const Potential& pot, const Theorem2Options& options) {
  const JostPolynomial jost = jost_polynomial(pot);
  Theorem2Report report;
  report.identity_expected = jost.admissible;
  if (!jost.admissible) {
    report.eq57_residual = std::abs(eq57_product(jost) - 1.0);
    return report;
  }
  const PhaseFunction phase = phase_function(jost, options.phase_grid);
  const Eq55Terms t55 = eq55_terms(phase, options.eq55_abs_tol);
  report.eq55_residual = t55.residual;
  report.eq56_residual = check_eq56(jost, options.n_quad);
  report.eq57_residual = check_eq57(jost);
  // Contour trapezoid error from one halving, plus the double-PV estimate.
  const double eq56_half = check_eq56(jost, options.n_quad / 2);
  report.quadrature_estimate =
      t55.estimate + std::abs(eq56_half - *report.eq56_residual) +
      64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(jost.degree() + 1);
  return report;
}

MirrorJacobiSpec mirror_potential(const Potential& pot, std::size_t M) {
  if (M <= pot.support()) {
    throw DomainError("mirror_potential", "M must exceed the support J = " +
                                              std::to_string(pot.support()));
  }
  std::vector<double> a(M, -1.0);
  std::vector<double> b(M, 2.0);
  for (std::size_t j = 1; j <= pot.support(); ++j) b[j - 1] += pot.at(j);
  return MirrorJacobiSpec(std::move(a), std::move(b));
}

Quantization quantization_solve(const PhaseFunction& phase, std::size_t M) {
  if (M == 0) throw DomainError("quantization_solve", "M must be >= 1");
  const double width = 2.0 * static_cast<double>(M) + 1.0;
  const double slope = phase.max_abs_derivative();
  if (2.0 * slope >= width) {
    const auto min_m = static_cast<std::size_t>(std::floor(slope - 0.5)) + 1;
    throw PreconditionError("quantization_solve",
                            "(2M+1) p + 2 eta(p) is not monotone for M = " + std::to_string(M) +
                                "; need M >= " + std::to_string(min_m));
  }
  Quantization q;
  q.momenta.reserve(2 * M);
  q.residuals.reserve(2 * M);
  for (std::size_t l = 1; l <= 2 * M; ++l) {
    const double target = kPi * static_cast<double>(l);
    const auto h = [&](double p) { return width * p + 2.0 * phase.eta(p) - target; };
    double lo = 0.0;
    double hi = kPi;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (h(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double p = std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
    q.momenta.push_back(p);
    q.residuals.push_back(std::abs(h(p)));
  }
  return q;
}

FiniteMBridgeReport finite_m_bridge(const PhaseFunction& phase, const Potential& pot,
                                    std::size_t M) {
  require_admissible(phase.jost(), "finite_m_bridge");
  const MirrorJacobiSpec spec = mirror_potential(pot, M);
  const Quantization q = quantization_solve(phase, M);
  const double width = 2.0 * static_cast<double>(M) + 1.0;
  const auto free_k = [&](std::size_t l) { return kPi * static_cast<double>(l) / width; };
  const auto& p = q.momenta;  // p[l - 1] = p_l

  FiniteMBridgeReport report;
  report.M = M;
  report.quantization_residuals = q.residuals;
  CompensatedSum total;
  for (std::size_t m = 1; m <= M; ++m) {
    CompensatedSum s;
    for (std::size_t n = 1; n <= M; ++n) {
      const double dp = omega_difference(p[2 * n - 2], p[2 * m - 1]);
      const double dk = omega_difference(free_k(2 * n - 1), free_k(2 * m));
      if (std::abs(dp) <= 1e-14 || std::abs(dk) <= 1e-14) {
        throw DegeneracyError("finite_m_bridge", "coincident omega values");
      }
      s.add(std::log(std::abs(dp)));
      s.add(-std::log(std::abs(dk)));
    }
    report.S.push_back(s.value());
    total.add(s.value());
  }
  report.sum_S = total.value();

  const Spectrum direct = eigenvalues(expand(spec));
  double worst = 0.0;
  for (std::size_t l = 0; l < p.size(); ++l) {
    worst = std::max(worst, std::abs(omega(p[l]) - direct.values[l]));
  }
  report.spectra_crosscheck = worst;
  return report;
}

FiniteMBridgeReport finite_m_bridge(const Potential& pot, std::size_t M) {
  if (M <= pot.support()) {
    throw DomainError("finite_m_bridge", "M must exceed the support J");
  }
  const JostPolynomial jost = jost_polynomial(pot);
  require_admissible(jost, "finite_m_bridge");
  return finite_m_bridge(phase_function(jost), pot, M);
}

double pv_omega_power(double k, int nu) {
  if (!(k > 0.0 && k < kPi)) throw DomainError("pv_omega_power", "k must lie in (0, pi)");
  if (nu < 1) throw DomainError("pv_omega_power", "nu must be >= 1");
  // w(t) = t + i sin t runs from 0 to pi above the pole at k and below
  // none of the others (k' = -k, 2 pi - k). Real part = average of +-i0.
  const double wk = omega(k);
  const auto integrand = [&](double t) {
    const cdouble w(t, std::sin(t));
    const cdouble dw(1.0, std::cos(t));
    const cdouble denom = 2.0 - 2.0 * std::cos(w) - wk;
    return (std::pow(denom, -nu) * dw).real();
  };
  return kronrod(integrand, 0.0, kPi, 1e-14).value;
}

QuadratureValue pv_integral_I_average(const PhaseFunction& phase, std::size_t K) {
  if (K < 4 || K % 4 != 0) {
    throw DomainError("pv_integral_I_average", "K must be a positive multiple of 4");
  }
  // I[omega(k)] is even about pi: evaluate on the nodes in (0, pi) and double.
  const auto trapezoid = [&](std::size_t n) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < n / 2; ++i) {
      const double k = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      acc.add(pv_integral_I(phase, omega(k)));
    }
    return 2.0 * acc.value() * 2.0 * kPi / static_cast<double>(n);
  };
  const double full = trapezoid(K);
  const double half = trapezoid(K / 2);
  return {full, std::abs(full - half)};
}

}  // namespace mirrorjac
