#pragma once

#include <cmath>
#include <cstddef>

namespace mirrorjac {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Neumaier's variant of Kahan summation. Order of add() calls fully
/// determines the result.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Product of real factors kept as (sign, log|.|). A zero factor makes the
/// product zero; callers that must reject zeros check before multiplying.
class SignedLogProduct {
 public:
  void multiply(double factor) noexcept {
    if (factor == 0.0) {
      zero_ = true;
      return;
    }
    if (factor < 0.0) ++negatives_;
    log_abs_.add(std::log(std::abs(factor)));
  }
  /// Multiply by a factor already given as sign and log magnitude.
  void multiply_log(int sign, double log_abs) noexcept {
    if (sign == 0) {
      zero_ = true;
      return;
    }
    if (sign < 0) ++negatives_;
    log_abs_.add(log_abs);
  }

  bool is_zero() const noexcept { return zero_; }
  int sign() const noexcept {
    if (zero_) return 0;
    return (negatives_ % 2 == 0) ? 1 : -1;
  }
  double log_abs() const noexcept { return log_abs_.value(); }
  std::size_t negative_count() const noexcept { return negatives_; }

 private:
  CompensatedSum log_abs_;
  std::size_t negatives_ = 0;
  bool zero_ = false;
};

/// omega(p) - omega(q) for the free dispersion omega(p) = 2 - 2 cos p,
/// evaluated as a product of sines so that close arguments keep full
/// relative accuracy.
inline double omega_difference(double p, double q) noexcept {
  return 4.0 * std::sin(0.5 * (p + q)) * std::sin(0.5 * (p - q));
}

inline double omega(double p) noexcept {
  const double s = std::sin(0.5 * p);
  return 4.0 * s * s;
}

}  // namespace mirrorjac
