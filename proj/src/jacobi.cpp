#include "mirrorjac/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mirrorjac/error.hpp"

namespace mirrorjac {

namespace {

constexpr double kMaxExactDouble = 9007199254740992.0;  // 2^53

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool is_integer_value(double x) {
  return std::isfinite(x) && std::trunc(x) == x && std::abs(x) <= kMaxExactDouble;
}

void require_finite(const TridiagMatrix& t, const char* op) {
  if (!all_finite(t.diag) || !all_finite(t.offdiag)) {
    throw DomainError(op, "matrix has non-finite entries");
  }
}

void require_positive_tol(double rel_tol, const char* op) {
  if (!(rel_tol > 0.0)) throw PreconditionError(op, "rel_tol must be > 0");
}

std::pair<double, double> gershgorin(const TridiagMatrix& t) {
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.offdiag[i - 1]);
    if (i + 1 < n) radius += std::abs(t.offdiag[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::abs(lo), std::abs(hi), 1.0});
  return {lo - pad, hi + pad};
}

// Bisects down to the resolution of the Sturm count, about eps * ||T||.
double bisect_eigenvalue(const TridiagMatrix& t, std::size_t index, double lo, double hi) {
  // Invariant: count(lo) <= index < count(hi).
  const double floor =
      2.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(lo), std::abs(hi), 1.0});
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= floor || mid <= lo || mid >= hi) return mid;
    if (sturm_count(t, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
}

}  // namespace

MirrorJacobiSpec::MirrorJacobiSpec(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw DomainError("MirrorJacobiSpec", "M must be >= 1");
  if (a_.size() != b_.size()) {
    throw DomainError("MirrorJacobiSpec", "a and b must both have length M");
  }
  if (!all_finite(a_) || !all_finite(b_)) {
    throw DomainError("MirrorJacobiSpec", "entries must be finite");
  }
}

bool MirrorJacobiSpec::has_zero_coupling() const noexcept {
  return std::any_of(a_.begin(), a_.end(), [](double x) { return x == 0.0; });
}

bool MirrorJacobiSpec::is_integer() const noexcept {
  return std::all_of(a_.begin(), a_.end(), is_integer_value) &&
         std::all_of(b_.begin(), b_.end(), is_integer_value);
}

TridiagMatrix::TridiagMatrix(std::vector<double> d, std::vector<double> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  if (diag.empty() || offdiag.size() + 1 != diag.size()) {
    throw DomainError("TridiagMatrix", "need n >= 1 diagonal and n - 1 off-diagonal entries");
  }
}

TridiagMatrix expand(const MirrorJacobiSpec& spec) {
  const std::size_t m = spec.half_size();
  const std::size_t n = 2 * m;
  std::vector<double> d(n);
  std::vector<double> e(n - 1);
  for (std::size_t j = 0; j < m; ++j) {
    d[j] = spec.b()[j];
    d[n - 1 - j] = spec.b()[j];
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    e[j] = spec.a()[j];
    e[n - 2 - j] = spec.a()[j];
  }
  e[m - 1] = spec.a()[m - 1];
  return TridiagMatrix(std::move(d), std::move(e));
}

namespace {
TridiagMatrix fold(const MirrorJacobiSpec& spec, double corner_sign) {
  const std::size_t m = spec.half_size();
  std::vector<double> d(spec.b());
  std::vector<double> e(spec.a().begin(), spec.a().end() - 1);
  d[m - 1] += corner_sign * spec.a()[m - 1];
  return TridiagMatrix(std::move(d), std::move(e));
}
}  // namespace

TridiagMatrix fold_even(const MirrorJacobiSpec& spec) { return fold(spec, 1.0); }

TridiagMatrix fold_odd(const MirrorJacobiSpec& spec) { return fold(spec, -1.0); }

std::size_t sturm_count(const TridiagMatrix& t, double x) {
  return sturm_count<double>(std::span<const double>(t.diag),
                             std::span<const double>(t.offdiag), x);
}

double degeneracy_threshold(double rel_tol, double diameter) noexcept {
  return 1e3 * rel_tol * std::abs(diameter);
}

Spectrum eigenvalues(const TridiagMatrix& t, double rel_tol) {
  require_positive_tol(rel_tol, "eigenvalues");
  require_finite(t, "eigenvalues");
  const auto [lo, hi] = gershgorin(t);
  Spectrum s;
  s.values.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    s.values.push_back(bisect_eigenvalue(t, k, lo, hi));
  }
  std::sort(s.values.begin(), s.values.end());
  const double threshold =
      degeneracy_threshold(rel_tol, s.values.back() - s.values.front());
  for (std::size_t k = 1; k < s.values.size(); ++k) {
    if (s.values[k] - s.values[k - 1] <= threshold) s.simple = false;
  }
  return s;
}

double eigenvalue_at(const TridiagMatrix& t, std::size_t index, double rel_tol) {
  require_positive_tol(rel_tol, "eigenvalue_at");
  require_finite(t, "eigenvalue_at");
  if (index >= t.size()) throw DomainError("eigenvalue_at", "index out of range");
  const auto [lo, hi] = gershgorin(t);
  return bisect_eigenvalue(t, index, lo, hi);
}

ParitySpectra parity_spectra(const MirrorJacobiSpec& spec, double rel_tol) {
  return {eigenvalues(fold_even(spec), rel_tol), eigenvalues(fold_odd(spec), rel_tol)};
}

std::vector<BigInt> char_poly_exact(const TridiagMatrix& t) {
  if (t.size() > kMaxExactDimension) {
    throw DomainError("char_poly_exact", "exact path is limited to n <= 64");
  }
  const auto to_big = [](const std::vector<double>& v) {
    std::vector<BigInt> out;
    out.reserve(v.size());
    for (double x : v) {
      if (!is_integer_value(x)) {
        throw DomainError("char_poly_exact", "entries must be integers");
      }
      out.emplace_back(static_cast<long long>(x));
    }
    return out;
  };
  const std::vector<BigInt> d = to_big(t.diag);
  const std::vector<BigInt> e = to_big(t.offdiag);
  return char_poly<BigInt>(std::span<const BigInt>(d), std::span<const BigInt>(e));
}

std::vector<int> parity_signs(const MirrorJacobiSpec& spec, double rel_tol) {
  if (spec.has_zero_coupling()) {
    throw PreconditionError("parity_signs", "all a_j must be nonzero");
  }
  const ParitySpectra ps = parity_spectra(spec, rel_tol);
  const Spectrum full = eigenvalues(expand(spec), rel_tol);
  const double threshold =
      degeneracy_threshold(rel_tol, full.values.back() - full.values.front());

  for (double mu : ps.mu.values) {
    for (double nu : ps.nu.values) {
      if (std::abs(mu - nu) <= threshold) {
        throw DegeneracyError("parity_signs",
                              "even and odd eigenvalues coincide within tolerance (mu = " +
                                  std::to_string(mu) + ", nu = " + std::to_string(nu) + ")");
      }
    }
  }

  const auto nearest = [](const std::vector<double>& vals, double x) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : vals) best = std::min(best, std::abs(v - x));
    return best;
  };

  std::vector<int> kappa;
  kappa.reserve(full.values.size());
  std::size_t even_count = 0;
  for (double lambda : full.values) {
    const double d_mu = nearest(ps.mu.values, lambda);
    const double d_nu = nearest(ps.nu.values, lambda);
    if (std::abs(d_mu - d_nu) <= threshold) {
      throw DegeneracyError("parity_signs", "cannot classify eigenvalue " +
                                                std::to_string(lambda));
    }
    const int k = d_mu < d_nu ? 1 : -1;
    if (k > 0) ++even_count;
    kappa.push_back(k);
  }
  if (even_count != spec.half_size()) {
    throw NumericalError("parity_signs",
                         "full spectrum does not split into M even and M odd values");
  }
  return kappa;
}

}  // namespace mirrorjac
