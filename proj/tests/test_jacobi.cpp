#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include "mirrorjac/error.hpp"
#include "mirrorjac/exact_identity.hpp"
#include "mirrorjac/jacobi.hpp"
#include "mirrorjac/sampling.hpp"
#include "oracles.hpp"

using namespace mirrorjac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using Rational = boost::multiprecision::cpp_rational;

namespace {

MirrorJacobiSpec free_chain(std::size_t M) {
  return MirrorJacobiSpec(std::vector<double>(M, -1.0), std::vector<double>(M, 2.0));
}

double sin2(double x) { return 4.0 * std::sin(x) * std::sin(x); }

}  // namespace

TEST_CASE("expand builds the mirror matrix") {
  const TridiagMatrix t1 = expand(MirrorJacobiSpec({5}, {7}));
  CHECK(t1.diag == std::vector<double>{7, 7});
  CHECK(t1.offdiag == std::vector<double>{5});

  const TridiagMatrix t2 = expand(MirrorJacobiSpec({1, 2}, {3, 4}));
  CHECK(t2.diag == std::vector<double>{3, 4, 4, 3});
  CHECK(t2.offdiag == std::vector<double>{1, 2, 1});

  const TridiagMatrix t3 = expand(free_chain(3));
  CHECK(t3.diag == std::vector<double>(6, 2.0));
  CHECK(t3.offdiag == std::vector<double>(5, -1.0));
}

TEST_CASE("folds differ only in the corner") {
  const MirrorJacobiSpec s1({5}, {7});
  CHECK(fold_even(s1).diag == std::vector<double>{12});
  CHECK(fold_even(s1).offdiag.empty());
  CHECK(fold_odd(s1).diag == std::vector<double>{2});

  const MirrorJacobiSpec s2({1, 2}, {3, 4});
  CHECK(fold_even(s2) == TridiagMatrix({3, 6}, {1}));
  CHECK(fold_odd(s2) == TridiagMatrix({3, 2}, {1}));

  CHECK(fold_even(free_chain(3)) == TridiagMatrix({2, 2, 1}, {-1, -1}));

  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    TrialRng rng(11, trial);
    const MirrorJacobiSpec s = random_real_spec(rng, 1 + trial % 6);
    const TridiagMatrix ev = fold_even(s);
    const TridiagMatrix od = fold_odd(s);
    const std::size_t M = s.half_size();
    CHECK(ev.offdiag == od.offdiag);
    for (std::size_t i = 0; i + 1 < M; ++i) CHECK(ev.diag[i] == od.diag[i]);
    CHECK_THAT(ev.diag[M - 1] - od.diag[M - 1], WithinAbs(2.0 * s.a()[M - 1], 1e-15));
  }
}

TEST_CASE("spec and matrix validation") {
  CHECK_THROWS_AS(MirrorJacobiSpec({}, {}), DomainError);
  CHECK_THROWS_AS(MirrorJacobiSpec({1, 2}, {3}), DomainError);
  CHECK_THROWS_AS(MirrorJacobiSpec({NAN}, {3}), DomainError);
  CHECK_THROWS_AS(TridiagMatrix({1, 2}, {}), DomainError);
  CHECK_NOTHROW(MirrorJacobiSpec({0, 1}, {3, 4}));
  CHECK_THROWS_AS(eigenvalues(TridiagMatrix({1, INFINITY}, {1})), DomainError);
  CHECK_THROWS_AS(eigenvalues(TridiagMatrix({1, 2}, {1}), 0.0), std::invalid_argument);
}

TEST_CASE("2x2 closed form") {
  const Spectrum s = eigenvalues(TridiagMatrix({2, 2}, {-1}));
  REQUIRE(s.values.size() == 2);
  CHECK_THAT(s.values[0], WithinAbs(1.0, 1e-12));
  CHECK_THAT(s.values[1], WithinAbs(3.0, 1e-12));
  CHECK(s.simple);
}

TEST_CASE("free chain spectrum matches the sine formula") {
  for (std::size_t M = 1; M <= 20; ++M) {
    const std::size_t N = 2 * M;
    const Spectrum s = eigenvalues(expand(free_chain(M)));
    REQUIRE(s.values.size() == N);
    for (std::size_t n = 1; n <= N; ++n) {
      const double exact = sin2(oracle::pi * static_cast<double>(n) / (2.0 * (N + 1.0)));
      CHECK_THAT(s.values[n - 1], WithinAbs(exact, 1e-12));
    }

    const ParitySpectra ps = parity_spectra(free_chain(M));
    for (std::size_t m = 1; m <= M; ++m) {
      const double denom = 2.0 * (2.0 * M + 1.0);
      CHECK_THAT(ps.mu.values[m - 1], WithinAbs(sin2((2.0 * m - 1.0) * oracle::pi / denom), 1e-12));
      CHECK_THAT(ps.nu.values[m - 1], WithinAbs(sin2(2.0 * m * oracle::pi / denom), 1e-12));
    }
  }
}

TEST_CASE("random 8x8 spectra agree with independent oracles") {
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    TrialRng rng(3, trial);
    std::vector<double> d(8);
    std::vector<double> e(7);
    for (double& x : d) x = rng.uniform(-3, 3);
    for (double& x : e) x = rng.uniform(0.2, 2) * (rng.integer(0, 1) ? 1 : -1);
    const TridiagMatrix t(d, e);
    const Spectrum s = eigenvalues(t);
    const auto bracketed = oracle::bracketed_eigenvalues(t);
    const auto dense = oracle::dense_eigenvalues(t);
    REQUIRE(bracketed.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK_THAT(s.values[i], WithinAbs(bracketed[i], 1e-10));
      CHECK_THAT(s.values[i], WithinAbs(dense[i], 1e-10));
      CHECK_THAT(eigenvalue_at(t, i), WithinAbs(s.values[i], 1e-11));
    }
  }
}

TEST_CASE("parity spectra merge into the full spectrum") {
  CHECK_THAT(parity_spectra(MirrorJacobiSpec({5}, {7})).mu.values[0], WithinAbs(12, 1e-12));
  CHECK_THAT(parity_spectra(MirrorJacobiSpec({5}, {7})).nu.values[0], WithinAbs(2, 1e-12));

  for (std::uint64_t trial = 0; trial < 120; ++trial) {
    TrialRng rng(5, trial);
    const MirrorJacobiSpec spec = random_real_spec(rng, 1 + trial % 8);
    const ParitySpectra ps = parity_spectra(spec);
    std::vector<double> merged = ps.mu.values;
    merged.insert(merged.end(), ps.nu.values.begin(), ps.nu.values.end());
    std::sort(merged.begin(), merged.end());
    const auto dense = oracle::dense_eigenvalues(expand(spec));
    REQUIRE(merged.size() == dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) {
      CHECK_THAT(merged[i], WithinAbs(dense[i], 1e-10 * std::max(1.0, std::abs(dense[i]))));
    }
  }
}

TEST_CASE("Sturm counts are exact over rationals") {
  using R = Rational;
  // Zero pivot on the first step: diag [0, 0], offdiag [1], eigenvalues +-1.
  const std::vector<R> d0{0, 0};
  const std::vector<R> e0{1};
  CHECK(sturm_count<R>(d0, e0, R(0)) == 1);
  CHECK(sturm_count<R>(d0, e0, R(-1)) == 1);
  CHECK(sturm_count<R>(d0, e0, R(1)) == 2);

  // Free 2x2 chain: eigenvalues exactly 1 and 3 are counted as <= x.
  const std::vector<R> d1{2, 2};
  const std::vector<R> e1{-1};
  CHECK(sturm_count<R>(d1, e1, R(1)) == 1);
  CHECK(sturm_count<R>(d1, e1, R(3)) == 2);
  CHECK(sturm_count<R>(d1, e1, R(2)) == 1);

  // Zero pivot in the middle of a 3x3: diag [1, 1, 1], offdiag [1, 1] at
  // x = 1 has eigenvalues 1 - sqrt 2, 1, 1 + sqrt 2.
  const std::vector<R> d2{1, 1, 1};
  const std::vector<R> e2{1, 1};
  CHECK(sturm_count<R>(d2, e2, R(1)) == 2);
  CHECK(sturm_count<R>(d2, e2, R(1, 2)) == 1);
}

TEST_CASE("mu and nu never share an eigenvalue when all a_j != 0") {
  // Exact: a nonzero resultant of the two folded characteristic polynomials
  // rules out a common root.
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    TrialRng rng(17, trial);
    const MirrorJacobiSpec spec = random_integer_spec(rng, 1 + trial % 5);
    const BigInt res = sylvester_resultant(char_poly_exact(fold_even(spec)),
                                           char_poly_exact(fold_odd(spec)));
    CHECK(res != 0);
  }
}

TEST_CASE("exact characteristic polynomials") {
  const auto p1 = char_poly_exact(TridiagMatrix({12}, {}));
  CHECK(p1 == std::vector<BigInt>{-12, 1});
  const auto p2 = char_poly_exact(TridiagMatrix({3, 6}, {1}));
  CHECK(p2 == std::vector<BigInt>{17, -9, 1});
  CHECK_THROWS_AS(char_poly_exact(TridiagMatrix({0.5}, {})), DomainError);
  CHECK_THROWS_AS(char_poly_exact(TridiagMatrix(std::vector<double>(65, 1.0),
                                                std::vector<double>(64, 1.0))),
                  DomainError);

  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    TrialRng rng(23, trial);
    const MirrorJacobiSpec spec = random_integer_spec(rng, 1 + trial % 4);
    const TridiagMatrix t = expand(spec);
    const auto coeffs = char_poly_exact(t);
    REQUIRE(coeffs.size() == t.size() + 1);
    CHECK(coeffs.back() == 1);
    // Consistency with the floating eigenvalues: p(lambda) is small
    // relative to the size of its terms, or to p' times the eigenvalue
    // error when lambda sits at 0.
    for (double lambda : eigenvalues(t).values) {
      double value = 0.0;
      double slope = 0.0;
      double scale = 0.0;
      for (std::size_t k = coeffs.size(); k-- > 0;) {
        const double c = coeffs[k].convert_to<double>();
        slope = slope * lambda + value;
        value = value * lambda + c;
        scale = scale * std::abs(lambda) + std::abs(c);
      }
      const double bound = std::max(1e-9 * t.size() * scale,
                                    1e-12 * std::abs(slope) * std::max(1.0, std::abs(lambda)));
      CHECK(std::abs(value) <= bound);
    }
  }
}

TEST_CASE("parity signs follow (-1)^n sign(a_M)") {
  CHECK(parity_signs(MirrorJacobiSpec({5}, {7})) == std::vector<int>{-1, 1});
  CHECK(parity_signs(MirrorJacobiSpec({-5}, {7})) == std::vector<int>{1, -1});
  CHECK_THROWS_AS(parity_signs(MirrorJacobiSpec({0, 1}, {1, 1})), PreconditionError);

  std::size_t refused = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    TrialRng rng(29, trial);
    const MirrorJacobiSpec spec = random_real_spec(rng, 1 + trial % 8);
    std::vector<int> kappa;
    try {
      kappa = parity_signs(spec);
    } catch (const DegeneracyError&) {
      ++refused;  // even and odd levels too close to attribute
      continue;
    }
    const int sa = spec.a().back() > 0 ? 1 : -1;
    for (std::size_t n = 1; n <= kappa.size(); ++n) {
      CHECK(kappa[n - 1] == (n % 2 == 0 ? sa : -sa));
    }
    // Membership cross-check against the parity spectra themselves.
    const ParitySpectra ps = parity_spectra(spec);
    const Spectrum full = eigenvalues(expand(spec));
    for (std::size_t n = 0; n < full.values.size(); ++n) {
      const double x = full.values[n];
      const auto near = [&](const std::vector<double>& v) {
        return std::any_of(v.begin(), v.end(), [&](double y) {
          return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(x));
        });
      };
      CHECK(near(kappa[n] > 0 ? ps.mu.values : ps.nu.values));
    }
  }
  CHECK(refused < 10);
}

TEST_CASE("degeneracy threshold") {
  CHECK_THAT(degeneracy_threshold(1e-12, 10.0), WithinRel(1e-8, 1e-12));
}
