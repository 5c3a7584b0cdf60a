#include "gqec/entanglement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gqec {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

void require_two_modes(int n_modes) {
  if (n_modes != 2) {
    throw std::invalid_argument("expected a two-mode state");
  }
}

}  // namespace

TwoModeBlocks two_mode_blocks(const Matrix& gamma) {
  if (gamma.rows() != 4 || gamma.cols() != 4) {
    throw std::invalid_argument("two_mode_blocks: expected a 4x4 matrix");
  }
  TwoModeBlocks blocks;
  blocks.A = gamma.block<2, 2>(0, 0);
  blocks.B = gamma.block<2, 2>(0, 2);
  blocks.C = gamma.block<2, 2>(2, 2);
  return blocks;
}

Matrix partial_transpose(const CovarianceMatrix& gamma) {
  require_two_modes(gamma.n_modes);
  Matrix out = gamma.data;
  out.row(3) *= -1.0;
  out.col(3) *= -1.0;
  return out;
}

Real nu_minus_squared(const Matrix& state_gamma) {
  const TwoModeBlocks blocks = two_mode_blocks(state_gamma);
  if (symmetry_gap(state_gamma) >
      kSymmetryTol * std::max<Real>(1.0, state_gamma.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("nu_minus: state must be symmetric");
  }
  // Partial transposition flips the sign of det B and keeps det gamma.
  const Real delta = blocks.A.determinant() + blocks.C.determinant() - 2.0 * blocks.B.determinant();
  const Real det_gamma = state_gamma.determinant();
  Real disc = delta * delta - 4.0 * det_gamma;
  if (disc < -1e-9 * std::max<Real>(1.0, delta * delta)) {
    throw std::runtime_error("nu_minus: negative discriminant (numerical failure)");
  }
  disc = std::max<Real>(0.0, disc);
  const Real denom = delta + std::sqrt(disc);
  if (!(denom > 0)) {
    throw std::runtime_error("nu_minus: nonpositive symplectic invariant (numerical failure)");
  }
  // Rationalized form of (delta - sqrt(disc)) / 2: immune to the cancellation
  // that dominates the textbook expression once cosh^2(2r) outgrows det gamma.
  return std::max<Real>(0.0, 2.0 * det_gamma / denom);
}

Real nu_minus(const CovarianceMatrix& gamma) {
  require_two_modes(gamma.n_modes);
  return std::sqrt(nu_minus_squared(gamma.data));
}

Real log_negativity(const CovarianceMatrix& gamma) {
  const Real nu = nu_minus(gamma);
  if (nu <= 0) {
    return kInf;
  }
  return std::max<Real>(0.0, -std::log2(nu));
}

DegradationResult entanglement_degradation(const GaussianChannel& channel) {
  require_valid(channel);
  const Real det_m = channel.M.determinant();
  const Real det_n = channel.N.determinant();
  const Real denom = (1.0 + det_m) * (1.0 + det_m);

  DegradationResult result;
  if (denom <= 0 || !std::isfinite(det_n / denom)) {
    // det M = -1: the limit nu_-^2 diverges; complete positivity already puts
    // this channel in the entanglement-breaking class.
    result.nu_minus_squared = kInf;
  } else {
    result.nu_minus_squared = det_n / denom;
  }
  if (det_m <= 0) {
    result.D = 1.0;
  } else {
    result.D = std::min<Real>(result.nu_minus_squared, 1.0);
  }
  if (result.D <= 0) {
    result.log_negativity = kInf;
  } else if (result.D >= 1.0) {
    result.log_negativity = 0.0;
  } else {
    result.log_negativity = -0.5 * std::log2(result.D);
  }
  result.entanglement_breaking = is_entanglement_breaking(channel);
  return result;
}

Real finite_r_degradation(const GaussianChannel& channel, Real r) {
  require_valid(channel);
  const CovarianceMatrix out = apply(channel, tmsv_covariance(r), 1);
  return std::max<Real>(0.0, nu_minus_squared(out.data));
}

Real degradation_from_choi(const CovarianceMatrix& chi) {
  require_two_modes(chi.n_modes);
  if (!is_physical(chi.data)) {
    throw std::invalid_argument("degradation_from_choi: state is not physical");
  }
  return std::min<Real>(1.0, nu_minus_squared(chi.data));
}

Real capacity_upper_bound(const GaussianChannel& channel) {
  const Real d = entanglement_degradation(channel).D;
  if (d <= 0) {
    return kInf;
  }
  if (d >= 1.0) {
    return 0.0;
  }
  return -0.5 * std::log2(d);
}

}  // namespace gqec
