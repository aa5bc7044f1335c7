#pragma once

namespace dicke {

/// Dense backend: state vectors of 2^n amplitudes, operators of 4^n entries.
inline constexpr int kMaxDenseQubits = 12;
/// Symmetric-sector backend: n+1 amplitudes.
inline constexpr int kMaxSymmetricQubits = 10000;

/// Every numerical tolerance used by validation and verdicts, in one place.
struct Tolerances {
  double norm = 1e-12;          // |psi|^2 = 1
  double hermitian = 1e-12;     // entrywise |A - A^dagger|
  double trace = 1e-12;         // Tr rho = 1
  double psd = 1e-10;           // lambda_min(rho) >= -psd
  double schmidt_sum = 1e-10;   // sum of squared Schmidt coefficients
  double symmetric_j2 = 1e-8;   // <J^2> = (n/2)(n/2+1) for symmetric states
  double detection = 1e-10;     // margin must exceed this to count as detected
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace dicke
