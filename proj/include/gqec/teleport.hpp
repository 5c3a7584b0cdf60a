#pragma once

#include "gqec/entanglement.hpp"

namespace gqec {

// Pseudo-inverse cutoff for homodyne Schur complements.
inline constexpr Real kPinvCutoff = 1e-12;

/// Finite-squeezing Choi state (1 (x) T)|phi_r><phi_r|: mode 1 is the
/// untouched half, mode 2 the channel output.
struct ChoiState {
  Real r = 0;
  CovarianceMatrix gamma;
};

ChoiState choi_state(const GaussianChannel& channel, Real r);

enum class Quadrature { x, p };

/// Gaussian conditional state after a homodyne measurement of one quadrature:
/// Schur-complement update on the kept modes, measured mode removed.
CovarianceMatrix homodyne_condition(const CovarianceMatrix& gamma, int mode, Quadrature quad);

/// Effective Gaussian channel induced by teleporting through a two-mode
/// resource state.
struct TeleportationChannel {
  Mat2 M_tel = Mat2::Identity();
  Mat2 N_tel = Mat2::Zero();
};

/// One run of the covariance-level teleportation protocol: 50/50 beam-splitter
/// Bell measurement of the input with resource mode 1 (x-homodyne on the
/// difference port, p-homodyne on the sum port) and displacement feedforward
/// on resource mode 2. Returns the output covariance for the given input
/// covariance (which need not be physical; the algebra is affine).
Mat2 teleport_probe(const ChoiState& resource, const Mat2& gamma_in);

/// Extract (M_tel, N_tel) by teleporting a basis of probe covariance matrices
/// and solving the affine map for the unknowns.
TeleportationChannel teleport_channel(const ChoiState& resource);

/// Max elementwise deviation between the teleported (M_tel, N_tel) through
/// choi_state(channel, r) and the original (M, N). Scales as e^(-2r).
Real lemma1_residual(const GaussianChannel& channel, Real r);

}  // namespace gqec
