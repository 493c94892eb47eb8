#pragma once

// -d^2/dz^2 +- A delta(z - pi/2) on [0, pi] with Dirichlet ends, split by
// reflection parity about pi/2, and the truncated double products that
// compare the attractive and repulsive spectra.

#include <cstddef>
#include <vector>

namespace mirrorjac {

struct ContinuumSpectra {
  double A = 0.0;
  int sign = 1;            // +1: repulsive (+A delta), -1: attractive
  std::vector<double> mu;  // even about pi/2, ascending
  std::vector<double> nu;  // odd about pi/2: (2m)^2
  std::size_t count = 0;
};

/// Even levels solve 2k cos(k pi/2) + sign A sin(k pi/2) = 0, one root per
/// interval between consecutive free levels; for sign = -1 and A > 4/pi the
/// lowest level is -kappa^2 with tanh(kappa pi/2) = 2 kappa / A.
/// DomainError unless A > 0, sign = +-1, N >= 1; NumericalError if a bracket
/// fails.
ContinuumSpectra delta_eigenvalues(double A, int sign, std::size_t N);

enum class Pairing {
  printed,    // denominator (2m)^2 - (2n-1)^2
  parity,     // denominator (2m-1)^2 - (2n)^2
};

const char* to_string(Pairing pairing) noexcept;

struct PairingResult {
  Pairing pairing = Pairing::parity;
  double lhs_log = 0.0;  // log|lhs|
  int lhs_sign = 1;
  double rhs_log = 0.0;
  int rhs_sign = 1;
  double gap = 0.0;      // |lhs - rhs| / |rhs|
};

/// Square-truncated products over m, n <= N taken from the given spectra
/// (both must hold at least N levels). DegeneracyError on a zero factor.
PairingResult pairing_product(const ContinuumSpectra& plus, const ContinuumSpectra& minus,
                              Pairing pairing, std::size_t N);

struct HypothesisReport {
  double A = 0.0;
  std::size_t N = 0;
  PairingResult printed;
  PairingResult parity;
  /// |log(lhs/rhs)| change to its Richardson limit from N/2 and N,
  /// assuming an O(1/N^2) truncation error, per pairing.
  double printed_tail = 0.0;
  double parity_tail = 0.0;
};

/// Both pairings at truncation N. DomainError unless 0.1 <= A <= 10 and
/// N >= 10.
HypothesisReport hypothesis_product(double A, std::size_t N);

}  // namespace mirrorjac
