#include "gqec/channel.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace gqec {

namespace {

// Closed-form smallest eigenvalue of a symmetric 2x2 matrix.
Real min_eigenvalue_2x2(const Mat2& m) {
  const Real tr = m(0, 0) + m(1, 1);
  const Real gap = std::hypot(m(0, 0) - m(1, 1), 2.0 * m(0, 1));
  return 0.5 * (tr - gap);
}

}  // namespace

ValidityReport validate(const GaussianChannel& channel) {
  ValidityReport report;
  report.n_symmetry_gap = symmetry_gap(channel.N);
  report.n_symmetric = channel.M.allFinite() && channel.N.allFinite() &&
                       report.n_symmetry_gap <= kSymmetryTol * std::max<Real>(1.0, channel.N.cwiseAbs().maxCoeff());
  const Mat2 n_sym = symmetrized(channel.N);
  report.n_min_eigenvalue = min_eigenvalue_2x2(n_sym);
  report.n_positive_semidefinite = report.n_min_eigenvalue >= -kNoisePsdTol;
  const Real det_m = channel.M.determinant();
  const Real det_n = n_sym.determinant();
  report.cp_margin = det_n - (det_m - 1.0) * (det_m - 1.0);
  report.cp_ok = report.cp_margin >= -kCpTol * std::max<Real>(1.0, std::abs(det_n));
  return report;
}

GaussianChannel make_channel(const Mat2& m, const Mat2& n) {
  GaussianChannel channel{m, symmetrized(n)};
  const ValidityReport report = validate(channel);
  if (!report.valid()) {
    std::string why;
    if (!report.n_symmetric) why = "N is not symmetric";
    else if (!report.n_positive_semidefinite) why = "N is not positive semidefinite";
    else why = "det N < (det M - 1)^2";
    throw std::invalid_argument("invalid Gaussian channel: " + why);
  }
  return channel;
}

void require_valid(const GaussianChannel& channel) {
  if (!validate(channel).valid()) {
    throw std::invalid_argument("invalid Gaussian channel");
  }
}

CovarianceMatrix apply(const GaussianChannel& channel, const CovarianceMatrix& gamma, int mode) {
  require_valid(channel);
  if (mode < 0 || mode >= gamma.n_modes) {
    throw std::invalid_argument("apply: mode index out of range");
  }
  Matrix embed = Matrix::Identity(2 * gamma.n_modes, 2 * gamma.n_modes);
  embed.block<2, 2>(2 * mode, 2 * mode) = channel.M;
  Matrix out = embed * gamma.data * embed.transpose();
  out.block<2, 2>(2 * mode, 2 * mode) += channel.N;
  out = symmetrized(out);
  return CovarianceMatrix{gamma.n_modes, std::move(out)};
}

GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first) {
  require_valid(second);
  require_valid(first);
  const Mat2 m = second.M * first.M;
  const Mat2 n = symmetrized(second.M * first.N * second.M.transpose() + second.N);
  return make_channel(m, n);
}

CanonicalDecomposition canonical_form(const GaussianChannel& channel) {
  require_valid(channel);
  Eigen::JacobiSVD<Mat2> svd(channel.M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat2 p = svd.matrixU();
  Mat2 q = svd.matrixV();
  Real d1 = svd.singularValues()(0);
  Real d2 = svd.singularValues()(1);
  // Move reflections of the SVD factors into the signs of the diagonal so
  // that M = P diag(d1, d2) Q^T with P, Q proper rotations.
  if (p.determinant() < 0) {
    p.col(1) *= -1.0;
    d2 = -d2;
  }
  if (q.determinant() < 0) {
    q.col(1) *= -1.0;
    d2 = -d2;
  }
  Mat2 v_rot = p.transpose();
  const Mat2 u_rot = q;
  if (d1 < 0) {  // rotate by pi so the leading entry is nonnegative
    v_rot = -v_rot;
    d1 = -d1;
    d2 = -d2;
  }

  const Real rank_cutoff = 1e-14 * std::max<Real>(1.0, std::abs(d1));
  CanonicalDecomposition deco;
  deco.input_rotation = SymplecticMatrix{1, u_rot};
  deco.output_rotation = SymplecticMatrix{1, v_rot};

  Mat2 s = Mat2::Identity();
  Mat2 m_prime;
  if (std::abs(d2) <= rank_cutoff) {
    // Rank-deficient M: leave the singular-value form diag(eta~, ~0), S = I.
    deco.eta = d1;
    m_prime = Mat2::Zero();
    m_prime(0, 0) = d1;
    m_prime(1, 1) = d2;
  } else if (d2 > 0) {
    deco.eta = std::sqrt(d1 * d2);
    const Real squeeze = std::log(d1 / deco.eta);
    s = Mat2::Zero();
    s(0, 0) = std::exp(-squeeze);
    s(1, 1) = std::exp(squeeze);
    m_prime = deco.eta * Mat2::Identity();
  } else {
    deco.eta = std::sqrt(-d1 * d2);
    const Real squeeze = std::log(d1 / deco.eta);
    s = Mat2::Zero();
    s(0, 0) = std::exp(-squeeze);
    s(1, 1) = std::exp(squeeze);
    m_prime = Mat2::Zero();
    m_prime(0, 0) = deco.eta;
    m_prime(1, 1) = -deco.eta;
  }
  deco.output_squeezer = SymplecticMatrix{1, s};
  const Mat2 n_prime = symmetrized(s * v_rot * channel.N * v_rot.transpose() * s.transpose());
  deco.channel_prime = GaussianChannel{m_prime, n_prime};
  return deco;
}

GaussianChannel attenuation(Real eta) {
  if (!(eta > 0.0) || !(eta < 1.0)) {
    throw std::out_of_range("attenuation requires 0 < eta < 1");
  }
  return GaussianChannel{eta * Mat2::Identity(), (1.0 - eta * eta) * Mat2::Identity()};
}

GaussianChannel amplification(Real eta) {
  if (!(eta > 1.0) || !std::isfinite(eta)) {
    throw std::out_of_range("amplification requires eta > 1");
  }
  return GaussianChannel{eta * Mat2::Identity(), (eta * eta - 1.0) * Mat2::Identity()};
}

GaussianChannel classical_noise(const Mat2& noise) {
  const Mat2 n = symmetrized(noise);
  if (symmetry_gap(noise) > kSymmetryTol * std::max<Real>(1.0, noise.cwiseAbs().maxCoeff()) ||
      !(min_eigenvalue_2x2(n) > 0)) {
    throw std::invalid_argument("classical_noise requires a symmetric positive-definite N");
  }
  return GaussianChannel{Mat2::Identity(), n};
}

GaussianChannel classical_noise(Real variance) {
  if (!(variance > 0) || !std::isfinite(variance)) {
    throw std::invalid_argument("classical_noise requires a positive variance");
  }
  return GaussianChannel{Mat2::Identity(), variance * Mat2::Identity()};
}

GaussianChannel phase_conjugation(Real eta) {
  if (!(eta > 0) || !std::isfinite(eta)) {
    throw std::out_of_range("phase_conjugation requires eta > 0");
  }
  Mat2 m = Mat2::Zero();
  m(0, 0) = eta;
  m(1, 1) = -eta;
  return GaussianChannel{m, (1.0 + eta * eta) * Mat2::Identity()};
}

GaussianChannel measure_prepare() { return classical_noise(2.0 * Mat2::Identity()); }

bool is_entanglement_breaking(const GaussianChannel& channel) {
  require_valid(channel);
  const Real det_m = channel.M.determinant();
  if (det_m <= 0) {
    return true;
  }
  const Real det_n = channel.N.determinant();
  return det_n >= (1.0 + det_m) * (1.0 + det_m);
}

}  // namespace gqec
