#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gqec/types.hpp"

namespace gqec {

// Tolerances for the covariance-level invariant checks. Quadratures are ordered
// (x1, p1, ..., xn, pn) and the vacuum covariance is the identity matrix.
inline constexpr Real kSymmetryTol = 1e-12;      // |gamma - gamma^T|, absolute per entry
inline constexpr Real kPhysicalityTol = 1e-9;    // min eig(gamma + i Omega) >= -tol
inline constexpr Real kSymplecticTol = 1e-10;    // |S Omega S^T - Omega|, per entry
inline constexpr Real kSymplecticDetTol = 1e-9;  // |det S - 1|
inline constexpr Real kDefaultSqueezeCap = 20.0; // guards cosh(2r) overflow

/// The canonical antisymmetric form, block-diagonal with [[0,1],[-1,0]] per mode.
struct SymplecticForm {
  int n_modes = 0;
  Matrix data;
};

SymplecticForm symplectic_form(int n_modes);
Matrix symplectic_form_matrix(int n_modes);

/// 2n x 2n real matrix with S Omega S^T = Omega; a Gaussian unitary at the
/// covariance level.
struct SymplecticMatrix {
  int n_modes = 0;
  Matrix data;
};

/// 2n x 2n real symmetric matrix of second moments, vacuum-normalized.
struct CovarianceMatrix {
  int n_modes = 0;
  Matrix data;
};

bool is_symplectic(const Matrix& s, Real tol = kSymplecticTol);
SymplecticMatrix make_symplectic(Matrix data);

/// Smallest eigenvalue of the Hermitian matrix gamma + i Omega.
Real physicality_min_eigenvalue(const Matrix& gamma);

/// gamma + i Omega >= 0 up to tolerance. The effective tolerance has a
/// scale-aware floor of O(eps * |gamma|) so the gate stays meaningful for
/// strongly squeezed states whose entries reach ~cosh(16).
bool is_physical(const Matrix& gamma, Real tol = kPhysicalityTol);

/// Validating constructor for untrusted input (files, user matrices).
CovarianceMatrix make_covariance(Matrix data);

CovarianceMatrix vacuum_state(int n_modes);

/// Rotation [[cos t, sin t], [-sin t, cos t]].
SymplecticMatrix phase_shifter(Real theta);

/// diag(e^-r, e^r).
SymplecticMatrix squeezer(Real r, Real squeeze_cap = kDefaultSqueezeCap);

/// Two-mode squeezed vacuum: diagonal blocks cosh(2r) I, off-diagonal blocks
/// sinh(2r) diag(1,-1).
CovarianceMatrix tmsv_covariance(Real r, Real squeeze_cap = kDefaultSqueezeCap);

/// The n values nu >= 0 such that the spectrum of i Omega gamma is {+-nu},
/// ascending. Equivalently the positive square roots of the eigenvalues of
/// -(Omega gamma)^2, deduplicated by pairing. The input must be symmetric but
/// need not be physical (partial transposes are fed here).
std::vector<Real> symplectic_eigenvalues(const Matrix& gamma);
std::vector<Real> symplectic_eigenvalues(const CovarianceMatrix& gamma);

/// Direct sum of states, mode ordering a-then-b.
CovarianceMatrix tensor(const CovarianceMatrix& a, const CovarianceMatrix& b);

/// Principal submatrix on the kept modes (0-based indices).
CovarianceMatrix partial_trace(const CovarianceMatrix& gamma, const std::vector<int>& keep);

/// S gamma S^T.
CovarianceMatrix apply_symplectic(const SymplecticMatrix& s, const CovarianceMatrix& gamma);

/// Bloch-Messiah sample K1 (diag of squeezers) K2 with K1, K2 Haar-random
/// passive symplectics and squeezings uniform on [-r_max, r_max].
/// Deterministic given the seed.
SymplecticMatrix random_symplectic(int n_modes, Real r_max, std::uint64_t seed);

/// Real symplectic representation of an n x n unitary (a passive, i.e.
/// orthogonal symplectic, transformation) in interleaved ordering.
Matrix passive_symplectic_from_unitary(const MatrixX<std::complex<Real>>& u);

/// Embed an n x n real mode map acting identically on x and p quadratures.
/// Orthogonal inputs yield passive symplectics (beam-splitter networks).
Matrix embed_mode_map(const Matrix& mode_map);

/// Block diagonal of per-mode phase shifters.
Matrix phase_layer(const Vector& thetas);

/// Block diagonal of per-mode squeezers diag(e^-r_i, e^r_i).
Matrix squeeze_layer(const Vector& rs);

}  // namespace gqec
