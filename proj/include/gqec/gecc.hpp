#pragma once

#include "gqec/channel.hpp"

namespace gqec {

/// Gaussian error-correcting code over n modes: the signal enters and leaves
/// on mode 0, the other n-1 modes are vacuum ancillas, and the channel acts
/// once per mode between the encoder and decoder symplectics.
struct GECCode {
  int n = 1;
  SymplecticMatrix S_E;
  SymplecticMatrix S_D;
};

GECCode make_gecc(int n, SymplecticMatrix encoder, SymplecticMatrix decoder);

/// The induced single-mode channel (M_GC, N_GC): with A = S_D (⊕ M) S_E,
/// B = S_D (⊕ N) S_D^T and P the restriction to the signal rows,
///   M_GC = P A_signal-cols,   N_GC = P (A_ancilla A_ancilla^T + B) P^T,
/// the ancilla term being the vacuum covariance passed through A.
GaussianChannel effective_channel(const GECCode& code, const GaussianChannel& channel);

/// D of the effective channel (the no-go quantity, clipped at 1).
Real degradation_of_code(const GECCode& code, const GaussianChannel& channel);

}  // namespace gqec
