#include "mirrorjac/sampling.hpp"

#include <vector>

#include "mirrorjac/error.hpp"

namespace mirrorjac {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : engine_(splitmix64(splitmix64(seed) ^ trial)) {}

long TrialRng::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(engine_() % span);
}

double TrialRng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1p-53;
  return lo + (hi - lo) * unit;
}

MirrorJacobiSpec random_integer_spec(TrialRng& rng, std::size_t M) {
  std::vector<double> a(M);
  std::vector<double> b(M);
  for (std::size_t j = 0; j < M; ++j) {
    long x = rng.integer(-9, 8);
    if (x >= 0) ++x;  // skip zero
    a[j] = static_cast<double>(x);
    b[j] = static_cast<double>(rng.integer(-9, 9));
  }
  return MirrorJacobiSpec(std::move(a), std::move(b));
}

MirrorJacobiSpec random_real_spec(TrialRng& rng, std::size_t M) {
  std::vector<double> a(M);
  std::vector<double> b(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double magnitude = rng.uniform(0.1, 2.0);
    a[j] = rng.integer(0, 1) == 0 ? -magnitude : magnitude;
    b[j] = rng.uniform(-2.0, 2.0);
  }
  return MirrorJacobiSpec(std::move(a), std::move(b));
}

Potential random_potential(TrialRng& rng, std::size_t J, double scale) {
  std::vector<double> v(J);
  for (std::size_t j = 0; j < J; ++j) v[j] = rng.uniform(-scale, scale);
  while (J > 0 && v[J - 1] == 0.0) v[J - 1] = rng.uniform(-scale, scale);
  return Potential(std::move(v));
}

Potential random_admissible_potential(TrialRng& rng, std::size_t J_max) {
  if (J_max == 0) throw DomainError("random_admissible_potential", "J_max must be >= 1");
  const auto J = static_cast<std::size_t>(rng.integer(1, static_cast<long>(J_max)));
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Potential pot = random_potential(rng, J, 1.0);
    const JostPolynomial jost = jost_polynomial(pot);
    if (jost.admissible && jost.min_root_modulus >= kSampleRootMargin) return pot;
  }
  throw NumericalError("random_admissible_potential", "rejection sampling did not terminate");
}

}  // namespace mirrorjac
