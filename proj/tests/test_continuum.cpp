#include <catch2/catch_amalgamated.hpp>

#include "mirrorjac/continuum.hpp"
#include "mirrorjac/error.hpp"
#include "oracles.hpp"

using namespace mirrorjac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("odd levels ignore the delta") {
  for (double A : {0.1, 1.0, 7.5}) {
    for (int sign : {1, -1}) {
      const ContinuumSpectra s = delta_eigenvalues(A, sign, 12);
      REQUIRE(s.nu.size() == 12);
      REQUIRE(s.mu.size() == 12);
      for (std::size_t m = 1; m <= 12; ++m) CHECK(s.nu[m - 1] == 4.0 * m * m);
    }
  }
}

TEST_CASE("even levels solve the matching condition") {
  for (double A : {0.3, 1.0, 3.0}) {
    for (int sign : {1, -1}) {
      const ContinuumSpectra s = delta_eigenvalues(A, sign, 30);
      for (std::size_t m = 1; m <= 30; ++m) {
        if (s.mu[m - 1] < 0.0) continue;  // bound level, checked below
        const double k = std::sqrt(s.mu[m - 1]);
        const double lhs = 2.0 * k * std::cos(0.5 * oracle::pi * k) +
                           sign * A * std::sin(0.5 * oracle::pi * k);
        CHECK(std::abs(lhs) < 1e-11 * std::max(1.0, k));
        if (m > 1) CHECK(s.mu[m - 1] > s.mu[m - 2]);
        // Interlacing with the free and odd levels.
        const double odd = 2.0 * m - 1.0;
        if (sign > 0) {
          CHECK(s.mu[m - 1] > odd * odd);
          CHECK(s.mu[m - 1] < s.nu[m - 1]);
        } else {
          CHECK(s.mu[m - 1] < odd * odd);
          if (m > 1) CHECK(s.mu[m - 1] > s.nu[m - 2]);
        }
      }
    }
  }
}

TEST_CASE("even levels match a finite-difference discretisation") {
  const std::size_t n = 8000;
  for (int sign : {1, -1}) {
    const ContinuumSpectra s = delta_eigenvalues(1.0, sign, 10);
    for (std::size_t m = 1; m <= 10; ++m) {
      const double fd_even = oracle::fd_delta_eigenvalue(1.0, sign, n, 2 * m - 2);
      const double fd_odd = oracle::fd_delta_eigenvalue(1.0, sign, n, 2 * m - 1);
      INFO("sign=" << sign << " m=" << m);
      CHECK_THAT(s.mu[m - 1], WithinRel(fd_even, 1e-3));
      CHECK_THAT(s.nu[m - 1], WithinRel(fd_odd, 1e-3));
    }
    CHECK_THAT(s.mu[0], WithinAbs(oracle::fd_delta_eigenvalue(1.0, sign, n, 0), 1e-4));
  }
}

TEST_CASE("strong attraction produces a negative level") {
  const double A = 2.0;  // above 4 / pi
  const ContinuumSpectra s = delta_eigenvalues(A, -1, 5);
  REQUIRE(s.mu[0] < 0.0);
  const double kappa = std::sqrt(-s.mu[0]);
  CHECK_THAT(A * std::tanh(0.5 * oracle::pi * kappa), WithinAbs(2.0 * kappa, 1e-12));
  CHECK_THAT(s.mu[0], WithinRel(oracle::fd_delta_eigenvalue(A, -1, 8000, 0), 1e-3));

  const ContinuumSpectra weak = delta_eigenvalues(1.0, -1, 1);
  CHECK(weak.mu[0] > 0.0);
  CHECK(delta_eigenvalues(4.0 / oracle::pi, -1, 1).mu[0] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("products collapse as the coupling vanishes") {
  const double A = 1e-10;
  for (std::size_t N : {7, 8, 25}) {
    const ContinuumSpectra plus = delta_eigenvalues(A, 1, N);
    const ContinuumSpectra minus = delta_eigenvalues(A, -1, N);
    const PairingResult parity = pairing_product(plus, minus, Pairing::parity, N);
    CHECK(parity.lhs_sign == 1);
    CHECK(parity.rhs_sign == 1);
    CHECK(std::abs(parity.lhs_log) < 1e-6);
    CHECK(std::abs(parity.rhs_log) < 1e-6);
    CHECK(parity.gap < 1e-6);

    // The printed denominators are the parity ones with m and n swapped,
    // hence a factor (-1)^(N^2) on each side.
    const PairingResult printed = pairing_product(plus, minus, Pairing::printed, N);
    const int expected = N % 2 == 0 ? 1 : -1;
    CHECK(printed.lhs_sign == expected);
    CHECK(printed.rhs_sign == expected);
    CHECK(printed.gap < 1e-6);
  }
}

TEST_CASE("truncated products converge") {
  for (double A : {1.0, 3.0, 5.0}) {
    double previous = 1.0;
    for (std::size_t N : {10, 25, 50, 100}) {
      const HypothesisReport r = hypothesis_product(A, N);
      INFO("A=" << A << " N=" << N);
      CHECK(r.parity.gap < previous);
      CHECK_THAT(r.printed.gap, WithinRel(r.parity.gap, 1e-6));
      CHECK(r.parity.lhs_sign == r.parity.rhs_sign);
      previous = r.parity.gap;
    }
    const HypothesisReport fine = hypothesis_product(A, 200);
    CHECK(fine.parity.gap < 1e-3);
    CHECK_THAT(fine.parity_tail, WithinRel(fine.parity.gap, 0.2));
  }
}

TEST_CASE("continuum argument checks") {
  CHECK_THROWS_AS(delta_eigenvalues(0.0, 1, 5), DomainError);
  CHECK_THROWS_AS(delta_eigenvalues(1.0, 0, 5), DomainError);
  CHECK_THROWS_AS(delta_eigenvalues(1.0, 1, 0), DomainError);
  CHECK_THROWS_AS(hypothesis_product(0.05, 20), DomainError);
  CHECK_THROWS_AS(hypothesis_product(1.0, 9), DomainError);
  const ContinuumSpectra small = delta_eigenvalues(1.0, 1, 3);
  CHECK_THROWS_AS(pairing_product(small, small, Pairing::parity, 4), DomainError);
  CHECK(std::string(to_string(Pairing::printed)) == "printed");
}
