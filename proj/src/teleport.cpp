#include "gqec/teleport.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace gqec {

namespace {

// Feedforward gain of the protocol. For a resource of Choi form
// (1 (x) T)|phi_r>, the cross block is sinh(2r) Z M^T, so the displacement
// that cancels the Bell-outcome dependence in the infinite-squeezing limit is
// sqrt(2) * M per outcome quadrature. The gain is read off the resource
// itself; no channel knowledge enters.
Mat2 resource_gain(const ChoiState& resource) {
  const Real c = std::sinh(2.0 * resource.r);
  if (std::abs(c) < kPinvCutoff) {
    return Mat2::Zero();  // unentangled resource: the protocol degenerates to prepare-only
  }
  Mat2 z = Mat2::Identity();
  z(1, 1) = -1.0;
  const Mat2 chi21 = resource.gamma.data.block<2, 2>(2, 0);
  return chi21 * z / c;
}

void require_resource(const ChoiState& resource) {
  if (resource.gamma.n_modes != 2) {
    throw std::invalid_argument("teleport: resource must be a two-mode state");
  }
  if (!is_physical(resource.gamma.data)) {
    throw std::invalid_argument("teleport: resource state is not physical");
  }
}

Mat2 vec_to_sym(const Eigen::Vector3d& v) {
  Mat2 m;
  m << v(0), v(1), v(1), v(2);
  return m;
}

Eigen::Vector3d sym_to_vec(const Mat2& m) { return Eigen::Vector3d(m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)); }

// Pull a unit column out of a near-rank-one PSD 2x2 block.
Eigen::Vector2d rank_one_column(const Mat2& g) {
  const int j = g(0, 0) >= g(1, 1) ? 0 : 1;
  if (g(j, j) < 1e-13) {
    return Eigen::Vector2d::Zero();
  }
  return g.col(j) / std::sqrt(g(j, j));
}

}  // namespace

ChoiState choi_state(const GaussianChannel& channel, Real r) {
  return ChoiState{r, apply(channel, tmsv_covariance(r), 1)};
}

CovarianceMatrix homodyne_condition(const CovarianceMatrix& gamma, int mode, Quadrature quad) {
  if (mode < 0 || mode >= gamma.n_modes) {
    throw std::invalid_argument("homodyne_condition: mode index out of range");
  }
  if (gamma.n_modes < 2) {
    throw std::invalid_argument("homodyne_condition: no mode would remain");
  }
  const int n = gamma.n_modes;
  const int k = n - 1;
  const int q = 2 * mode + (quad == Quadrature::x ? 0 : 1);

  std::vector<int> kept;
  kept.reserve(2 * k);
  for (int i = 0; i < 2 * n; ++i) {
    if (i / 2 != mode) {
      kept.push_back(i);
    }
  }
  Matrix a(2 * k, 2 * k);
  Vector cross(2 * k);
  for (int i = 0; i < 2 * k; ++i) {
    cross(i) = gamma.data(kept[i], q);
    for (int j = 0; j < 2 * k; ++j) {
      a(i, j) = gamma.data(kept[i], kept[j]);
    }
  }
  // Schur complement against the projector onto the measured quadrature; a
  // variance below the cutoff pseudo-inverts to zero.
  const Real var = gamma.data(q, q);
  if (var > kPinvCutoff) {
    a -= (cross / var) * cross.transpose();
  }
  a = symmetrized(a);
  return CovarianceMatrix{k, std::move(a)};
}

Mat2 teleport_probe(const ChoiState& resource, const Mat2& gamma_in) {
  require_resource(resource);
  const Mat2 gain = std::sqrt(2.0) * resource_gain(resource);

  // Modes: 0 = input, 1 = resource half kept by the sender, 2 = receiver.
  Matrix total = Matrix::Zero(6, 6);
  total.block<2, 2>(0, 0) = symmetrized(gamma_in);
  total.block<4, 4>(2, 2) = resource.gamma.data;

  // 50/50 beam splitter between modes 0 and 1.
  Matrix bs = Matrix::Identity(6, 6);
  const Real inv_sqrt2 = 1.0 / std::sqrt(2.0);
  bs.block<2, 2>(0, 0) = inv_sqrt2 * Mat2::Identity();
  bs.block<2, 2>(0, 2) = -inv_sqrt2 * Mat2::Identity();
  bs.block<2, 2>(2, 0) = inv_sqrt2 * Mat2::Identity();
  bs.block<2, 2>(2, 2) = inv_sqrt2 * Mat2::Identity();
  const Matrix mixed = symmetrized(bs * total * bs.transpose());

  // Measured quadratures: x of the difference port (index 0) and p of the sum
  // port (index 3). The receiver's displaced quadratures are r_2 + G m, whose
  // covariance equals the homodyne Schur complement plus the unit-gain
  // feedforward term; the Schur pieces cancel, leaving the closed form below.
  Mat2 meas_cov;
  meas_cov << mixed(0, 0), mixed(0, 3), mixed(3, 0), mixed(3, 3);
  Mat2 cross;
  cross << mixed(4, 0), mixed(4, 3), mixed(5, 0), mixed(5, 3);
  const Mat2 receiver = mixed.block<2, 2>(4, 4);

  Mat2 out = receiver + cross * gain.transpose() + gain * cross.transpose() +
             gain * meas_cov * gain.transpose();
  return symmetrized(out);
}

TeleportationChannel teleport_channel(const ChoiState& resource) {
  require_resource(resource);

  // Probe basis: vacuum plus three squeezed variants spanning Sym(2).
  const Mat2 p0 = Mat2::Identity();
  Mat2 p1 = Mat2::Zero();
  p1(0, 0) = 2.0;
  p1(1, 1) = 0.5;
  Mat2 p2 = Mat2::Zero();
  p2(0, 0) = 0.5;
  p2(1, 1) = 2.0;
  const Real c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  Mat2 rot;
  rot << c, s, -s, c;
  const Mat2 p3 = symmetrized(rot * p1 * rot.transpose());

  const Mat2 f0 = teleport_probe(resource, p0);
  const Mat2 f1 = teleport_probe(resource, p1);
  const Mat2 f2 = teleport_probe(resource, p2);
  const Mat2 f3 = teleport_probe(resource, p3);

  // Linear part L with L(gamma) = M gamma M^T, as a 3x3 map on vectorized
  // symmetric matrices.
  Eigen::Matrix3d in_basis, out_basis;
  in_basis.col(0) = sym_to_vec(p1 - p0);
  in_basis.col(1) = sym_to_vec(p2 - p0);
  in_basis.col(2) = sym_to_vec(p3 - p0);
  out_basis.col(0) = sym_to_vec(f1 - f0);
  out_basis.col(1) = sym_to_vec(f2 - f0);
  out_basis.col(2) = sym_to_vec(f3 - f0);
  const Eigen::Matrix3d l = out_basis * in_basis.inverse();

  // L(e1 e1^T) = m1 m1^T, L(e2 e2^T) = m2 m2^T and the mixed term fixes the
  // relative sign of the columns; the overall sign of M is not observable at
  // the covariance level.
  Mat2 e11 = Mat2::Zero();
  e11(0, 0) = 1.0;
  Mat2 e22 = Mat2::Zero();
  e22(1, 1) = 1.0;
  Mat2 e12 = Mat2::Zero();
  e12(0, 1) = e12(1, 0) = 1.0;
  const Mat2 g11 = vec_to_sym(l * sym_to_vec(e11));
  const Mat2 g22 = vec_to_sym(l * sym_to_vec(e22));
  const Mat2 g12 = vec_to_sym(l * sym_to_vec(e12));

  Eigen::Vector2d m1 = rank_one_column(g11);
  Eigen::Vector2d m2 = rank_one_column(g22);
  const Mat2 plus = m1 * m2.transpose() + m2 * m1.transpose();
  if ((plus - g12).cwiseAbs().maxCoeff() > (-plus - g12).cwiseAbs().maxCoeff()) {
    m2 = -m2;
  }
  Mat2 m_tel;
  m_tel.col(0) = m1;
  m_tel.col(1) = m2;

  // Deterministic sign convention: largest-magnitude entry positive.
  Real best = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(m_tel(i, j)) > std::abs(best)) {
        best = m_tel(i, j);
      }
    }
  }
  if (best < 0) {
    m_tel = -m_tel;
  }

  const Mat2 n_tel = symmetrized(f0 - m_tel * m_tel.transpose());
  TeleportationChannel channel{m_tel, n_tel};
  if (!validate(GaussianChannel{channel.M_tel, channel.N_tel}).valid()) {
    throw std::runtime_error("teleport_channel: extracted channel failed CP validation");
  }
  return channel;
}

Real lemma1_residual(const GaussianChannel& channel, Real r) {
  require_valid(channel);
  const TeleportationChannel tel = teleport_channel(choi_state(channel, r));
  const Real res_plus =
      std::max(max_abs_diff(tel.M_tel, channel.M), max_abs_diff(tel.N_tel, channel.N));
  // (M, N) and (-M, N) act identically on covariances, so the residual is
  // taken over the unobservable sign.
  const Real res_minus =
      std::max(max_abs_diff(-tel.M_tel, channel.M), max_abs_diff(tel.N_tel, channel.N));
  return std::min(res_plus, res_minus);
}

}  // namespace gqec
