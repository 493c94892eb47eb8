#pragma once

// Reproducible random inputs for property sweeps. Each trial draws from
// its own generator seeded by splitmix64(seed, trial), so results do not
// depend on how trials are distributed across threads. Integer and real
// draws avoid std::uniform_*_distribution, whose output is not specified
// across standard libraries.

#include <cstddef>
#include <cstdint>
#include <random>

#include "mirrorjac/jacobi.hpp"
#include "mirrorjac/scattering.hpp"

namespace mirrorjac {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi);
  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// a_j uniform in [-9, 9] \ {0}, b_j uniform in [-9, 9].
MirrorJacobiSpec random_integer_spec(TrialRng& rng, std::size_t M);

/// a_j uniform in [-2, -0.1] u [0.1, 2], b_j uniform in [-2, 2].
MirrorJacobiSpec random_real_spec(TrialRng& rng, std::size_t M);

/// v_j uniform in [-scale, scale], v_J forced nonzero.
Potential random_potential(TrialRng& rng, std::size_t J, double scale);

inline constexpr double kSampleRootMargin = 1.1;

/// J uniform in [1, J_max], then v_j uniform in [-1, 1] until every Jost
/// root satisfies |z| >= 1.1 (rejection sampling). NumericalError after
/// 10000 rejections.
Potential random_admissible_potential(TrialRng& rng, std::size_t J_max);

}  // namespace mirrorjac
