#pragma once

#include "gqec/channel.hpp"

namespace gqec {

/// 2x2 blocks of a two-mode covariance matrix gamma = [[A, B], [B^T, C]].
struct TwoModeBlocks {
  Mat2 A;
  Mat2 B;
  Mat2 C;
};

TwoModeBlocks two_mode_blocks(const Matrix& gamma);

/// P gamma P with P = diag(1,1,1,-1) (momentum flip on mode 2).
Matrix partial_transpose(const CovarianceMatrix& gamma);

/// Squared smallest symplectic eigenvalue of the partial transpose of a
/// two-mode state, by the closed form
///   2 nu_-^2 = Dt - sqrt(Dt^2 - 4 det gamma),  Dt = det A + det C - 2 det B,
/// evaluated in the cancellation-free rationalized form
///   nu_-^2 = 2 det gamma / (Dt + sqrt(Dt^2 - 4 det gamma)).
Real nu_minus_squared(const Matrix& state_gamma);

/// Smallest symplectic eigenvalue of the partial transpose; cross-checkable
/// against symplectic_eigenvalues(partial_transpose(gamma)).
Real nu_minus(const CovarianceMatrix& gamma);

/// max(0, -log2 nu_-).
Real log_negativity(const CovarianceMatrix& gamma);

/// Channel invariant D = min(det N / (1 + det M)^2, 1) and companions.
/// Logarithms are base 2 throughout.
struct DegradationResult {
  Real D = 1;
  Real nu_minus_squared = 1;  // +infinity when det M = -1 exactly
  Real log_negativity = 0;    // -1/2 log2 D; +infinity when D = 0
  bool entanglement_breaking = false;
};

DegradationResult entanglement_degradation(const GaussianChannel& channel);

/// nu_-^2 of (1 (x) T) applied to tmsv_covariance(r), clamped to [0, inf).
/// Converges to the closed form as r grows, at rate O(1/cosh 2r). Not clipped
/// at 1.
Real finite_r_degradation(const GaussianChannel& channel, Real r);

/// min(1, nu_-^2) of a generic physical two-mode state.
Real degradation_from_choi(const CovarianceMatrix& chi);

/// -1/2 log2 D; +infinity when D = 0, exactly 0 when D = 1.
Real capacity_upper_bound(const GaussianChannel& channel);

}  // namespace gqec
