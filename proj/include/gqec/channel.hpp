#pragma once

#include "gqec/symplectic.hpp"

namespace gqec {

inline constexpr Real kCpTol = 1e-9;         // slack on det N >= (det M - 1)^2
inline constexpr Real kNoisePsdTol = 1e-12;  // min eig N >= -tol

/// Single-mode Gaussian channel acting on covariances as gamma -> M gamma M^T + N.
struct GaussianChannel {
  Mat2 M = Mat2::Identity();
  Mat2 N = Mat2::Zero();
};

struct ValidityReport {
  bool n_symmetric = false;
  bool n_positive_semidefinite = false;
  bool cp_ok = false;
  Real n_symmetry_gap = 0;
  Real n_min_eigenvalue = 0;
  Real cp_margin = 0;  // det N - (det M - 1)^2

  bool valid() const { return n_symmetric && n_positive_semidefinite && cp_ok; }
};

/// Complete-positivity and noise-matrix checks with margins.
ValidityReport validate(const GaussianChannel& channel);

/// Validating constructor; throws std::invalid_argument on a failed report.
GaussianChannel make_channel(const Mat2& m, const Mat2& n);

void require_valid(const GaussianChannel& channel);

/// Apply the channel to one mode of a multi-mode state. Off-diagonal blocks
/// pick up M on the target side; N is added on the target block.
CovarianceMatrix apply(const GaussianChannel& channel, const CovarianceMatrix& gamma, int mode);

/// second after first: M = M2 M1, N = M2 N1 M2^T + N2.
GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first);

/// Local phase shifts and a squeezer turning M into eta*I (det M > 0),
/// eta*diag(1,-1) (det M < 0) or diag(eta, 0) (det M = 0):
///   M' = S V M U,  N' = S V N V^T S.
/// Local symplectics preserve det M and det N.
struct CanonicalDecomposition {
  GaussianChannel channel_prime;
  SymplecticMatrix input_rotation;   // U
  SymplecticMatrix output_rotation;  // V
  SymplecticMatrix output_squeezer;  // S
  Real eta = 0;
};

CanonicalDecomposition canonical_form(const GaussianChannel& channel);

/// M = eta*I, N = |1 - eta^2|*I with 0 < eta < 1. Saturates the CP bound.
GaussianChannel attenuation(Real eta);

/// Same matrices with eta > 1.
GaussianChannel amplification(Real eta);

/// M = I with the given N > 0.
GaussianChannel classical_noise(const Mat2& noise);

/// Isotropic convenience overload: N = variance * I.
GaussianChannel classical_noise(Real variance);

/// M = eta*diag(1,-1) with the minimal isotropic CP-saturating noise
/// N = (1 + eta^2) I. det M < 0 for every eta > 0.
GaussianChannel phase_conjugation(Real eta);

/// Classical noise with N = 2I (det N = 4), the measure-and-prepare point.
GaussianChannel measure_prepare();

/// det M <= 0, or det M > 0 with det N >= (1 + det M)^2.
bool is_entanglement_breaking(const GaussianChannel& channel);

}  // namespace gqec
