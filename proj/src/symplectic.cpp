#include "gqec/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gqec {

namespace {

using Complex = std::complex<Real>;
using MatrixC = MatrixX<Complex>;

constexpr Real kEps = std::numeric_limits<Real>::epsilon();

void require_positive_modes(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("mode count must be at least 1");
  }
}

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": expected a 2n x 2n matrix");
  }
}

// Construction paths that guarantee symmetry and physicality algebraically
// bypass the eigenvalue gate of make_covariance.
CovarianceMatrix covariance_unchecked(int n_modes, Matrix data) {
  return CovarianceMatrix{n_modes, std::move(data)};
}

std::mt19937_64 seeded_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

// Haar-distributed unitary: complex Ginibre, QR, phase-normalized R diagonal.
MatrixC haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<Real> normal(0.0, 1.0);
  MatrixC a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      a(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<MatrixC> qr(a);
  MatrixC q = qr.householderQ();
  const MatrixC r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const Real mag = std::abs(d);
    if (mag > 0) {
      q.col(j) *= d / mag;
    }
  }
  return q;
}

std::vector<Real> paired_values(std::vector<Real> values) {
  std::sort(values.begin(), values.end());
  const int n = static_cast<int>(values.size()) / 2;
  std::vector<Real> out(n);
  for (int i = 0; i < n; ++i) {
    const Real lo = values[2 * i];
    const Real hi = values[2 * i + 1];
    if (std::abs(hi - lo) > 1e-6 * std::max<Real>(1.0, hi)) {
      throw std::runtime_error("symplectic_eigenvalues: pairing of +-nu broke down (conditioning)");
    }
    out[i] = 0.5 * (lo + hi);
  }
  return out;
}

}  // namespace

Matrix symplectic_form_matrix(int n_modes) {
  require_positive_modes(n_modes);
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  return omega;
}

SymplecticForm symplectic_form(int n_modes) {
  return SymplecticForm{n_modes, symplectic_form_matrix(n_modes)};
}

bool is_symplectic(const Matrix& s, Real tol) {
  if (s.rows() != s.cols() || s.rows() < 2 || s.rows() % 2 != 0) {
    return false;
  }
  if (!s.allFinite()) {
    return false;
  }
  const int n = static_cast<int>(s.rows()) / 2;
  const Matrix omega = symplectic_form_matrix(n);
  // Scale-aware slack: the product S Omega S^T rounds at eps * |S|^2.
  const Real scale = s.cwiseAbs().maxCoeff();
  const Real eff_tol = std::max(tol, 16 * kEps * scale * scale);
  if (max_abs_diff(s * omega * s.transpose(), omega) > eff_tol) {
    return false;
  }
  return std::abs(s.determinant() - 1.0) <= std::max(kSymplecticDetTol, 16 * kEps * scale * scale);
}

SymplecticMatrix make_symplectic(Matrix data) {
  require_even_square(data, "symplectic matrix");
  if (!is_symplectic(data)) {
    throw std::invalid_argument("matrix is not symplectic (S Omega S^T != Omega)");
  }
  const int n = static_cast<int>(data.rows()) / 2;
  return SymplecticMatrix{n, std::move(data)};
}

Real physicality_min_eigenvalue(const Matrix& gamma) {
  require_even_square(gamma, "covariance");
  const int n = static_cast<int>(gamma.rows()) / 2;
  MatrixC h = gamma.cast<Complex>();
  h += Complex(0, 1) * symplectic_form_matrix(n).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<MatrixC> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_physical(const Matrix& gamma, Real tol) {
  if (!gamma.allFinite()) {
    return false;
  }
  const Real scale = gamma.cwiseAbs().maxCoeff();
  const Real eff_tol = std::max(tol, 64 * kEps * std::max<Real>(1.0, scale));
  return physicality_min_eigenvalue(gamma) >= -eff_tol;
}

CovarianceMatrix make_covariance(Matrix data) {
  require_even_square(data, "covariance");
  if (!data.allFinite()) {
    throw std::invalid_argument("covariance: non-finite entries");
  }
  if (symmetry_gap(data) > kSymmetryTol * std::max<Real>(1.0, data.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("covariance: matrix is not symmetric");
  }
  data = symmetrized(data);
  if (!is_physical(data)) {
    throw std::invalid_argument("covariance: gamma + i Omega has a negative eigenvalue");
  }
  return CovarianceMatrix{static_cast<int>(data.rows()) / 2, std::move(data)};
}

CovarianceMatrix vacuum_state(int n_modes) {
  require_positive_modes(n_modes);
  return covariance_unchecked(n_modes, Matrix::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticMatrix phase_shifter(Real theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("phase_shifter: theta must be finite");
  }
  Matrix m(2, 2);
  const Real c = std::cos(theta);
  const Real s = std::sin(theta);
  m << c, s, -s, c;
  return SymplecticMatrix{1, std::move(m)};
}

SymplecticMatrix squeezer(Real r, Real squeeze_cap) {
  if (!std::isfinite(r) || std::abs(r) > squeeze_cap) {
    throw std::out_of_range("squeezer: |r| must not exceed the squeeze cap");
  }
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(-r);
  m(1, 1) = std::exp(r);
  return SymplecticMatrix{1, std::move(m)};
}

CovarianceMatrix tmsv_covariance(Real r, Real squeeze_cap) {
  if (!std::isfinite(r) || std::abs(r) > squeeze_cap) {
    throw std::out_of_range("tmsv_covariance: |r| must not exceed the squeeze cap");
  }
  const Real a = std::cosh(2 * r);
  const Real c = std::sinh(2 * r);
  Matrix g = Matrix::Zero(4, 4);
  g.diagonal().setConstant(a);
  g(0, 2) = g(2, 0) = c;
  g(1, 3) = g(3, 1) = -c;
  return covariance_unchecked(2, std::move(g));
}

std::vector<Real> symplectic_eigenvalues(const Matrix& gamma) {
  require_even_square(gamma, "symplectic_eigenvalues");
  const Real scale = std::max<Real>(1.0, gamma.cwiseAbs().maxCoeff());
  if (symmetry_gap(gamma) > kSymmetryTol * scale) {
    throw std::invalid_argument("symplectic_eigenvalues: input is not symmetric");
  }
  const int n = static_cast<int>(gamma.rows()) / 2;
  const Matrix omega = symplectic_form_matrix(n);

  // Positive-definite inputs (every physical state and every partial
  // transpose of one): gamma = L L^T makes Omega gamma similar to the
  // antisymmetric K = L^T Omega L, so the +-i nu spectrum turns into the
  // paired singular values of K. This is the symmetric-solver realization of
  // sqrt(eig(-(Omega gamma)^2)).
  Eigen::LLT<Matrix> llt(gamma);
  if (llt.info() == Eigen::Success) {
    const Matrix l = llt.matrixL();
    const Matrix k = l.transpose() * omega * l;
    Eigen::JacobiSVD<Matrix> svd(k);
    const Vector sv = svd.singularValues();
    std::vector<Real> values(sv.data(), sv.data() + sv.size());
    return paired_values(std::move(values));
  }

  // Indefinite symmetric input: fall back to the general spectrum of
  // -(Omega gamma)^2, which must be real and nonnegative up to roundoff.
  const Matrix og = omega * gamma;
  const Matrix b = -(og * og);
  Eigen::EigenSolver<Matrix> solver(b);
  const Real b_scale = std::max<Real>(1.0, b.cwiseAbs().maxCoeff());
  std::vector<Real> values;
  values.reserve(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const Complex lambda = solver.eigenvalues()(i);
    if (std::abs(lambda.imag()) > 1e-9 * b_scale) {
      throw std::runtime_error("symplectic_eigenvalues: complex eigenvalue of -(Omega gamma)^2");
    }
    if (lambda.real() < -1e-9 * b_scale) {
      throw std::runtime_error("symplectic_eigenvalues: negative eigenvalue of -(Omega gamma)^2");
    }
    values.push_back(std::sqrt(std::max<Real>(0.0, lambda.real())));
  }
  return paired_values(std::move(values));
}

std::vector<Real> symplectic_eigenvalues(const CovarianceMatrix& gamma) {
  return symplectic_eigenvalues(gamma.data);
}

CovarianceMatrix tensor(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  return covariance_unchecked(a.n_modes + b.n_modes, direct_sum(a.data, b.data));
}

CovarianceMatrix partial_trace(const CovarianceMatrix& gamma, const std::vector<int>& keep) {
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set must not be empty");
  }
  std::vector<int> modes = keep;
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
  for (int m : modes) {
    if (m < 0 || m >= gamma.n_modes) {
      throw std::invalid_argument("partial_trace: mode index out of range");
    }
  }
  const int k = static_cast<int>(modes.size());
  Matrix out(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = gamma.data.block<2, 2>(2 * modes[i], 2 * modes[j]);
    }
  }
  return covariance_unchecked(k, std::move(out));
}

CovarianceMatrix apply_symplectic(const SymplecticMatrix& s, const CovarianceMatrix& gamma) {
  if (s.n_modes != gamma.n_modes) {
    throw std::invalid_argument("apply_symplectic: mode counts differ");
  }
  Matrix out = symmetrized(s.data * gamma.data * s.data.transpose());
  return covariance_unchecked(gamma.n_modes, std::move(out));
}

Matrix passive_symplectic_from_unitary(const MatrixC& u) {
  const int n = static_cast<int>(u.rows());
  if (u.cols() != n || n < 1) {
    throw std::invalid_argument("passive_symplectic_from_unitary: expected a square unitary");
  }
  // x_i' = sum_j Re(u_ij) x_j - Im(u_ij) p_j ; p_i' = Im(u_ij) x_j + Re(u_ij) p_j.
  // This is the interleaved-ordering image of the xx..pp block form [[X,-Y],[Y,X]].
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Real re = u(i, j).real();
      const Real im = u(i, j).imag();
      s(2 * i, 2 * j) = re;
      s(2 * i, 2 * j + 1) = -im;
      s(2 * i + 1, 2 * j) = im;
      s(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return s;
}

Matrix embed_mode_map(const Matrix& mode_map) {
  const int n = static_cast<int>(mode_map.rows());
  if (mode_map.cols() != n || n < 1) {
    throw std::invalid_argument("embed_mode_map: expected a square mode map");
  }
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s(2 * i, 2 * j) = mode_map(i, j);
      s(2 * i + 1, 2 * j + 1) = mode_map(i, j);
    }
  }
  return s;
}

Matrix phase_layer(const Vector& thetas) {
  const int n = static_cast<int>(thetas.size());
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    s.block<2, 2>(2 * i, 2 * i) = phase_shifter(thetas(i)).data;
  }
  return s;
}

Matrix squeeze_layer(const Vector& rs) {
  const int n = static_cast<int>(rs.size());
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    s(2 * i, 2 * i) = std::exp(-rs(i));
    s(2 * i + 1, 2 * i + 1) = std::exp(rs(i));
  }
  return s;
}

SymplecticMatrix random_symplectic(int n_modes, Real r_max, std::uint64_t seed) {
  require_positive_modes(n_modes);
  if (!(r_max > 0)) {
    throw std::invalid_argument("random_symplectic: r_max must be positive");
  }
  auto rng = seeded_engine(seed);
  const Matrix k1 = passive_symplectic_from_unitary(haar_unitary(n_modes, rng));
  const Matrix k2 = passive_symplectic_from_unitary(haar_unitary(n_modes, rng));
  std::uniform_real_distribution<Real> uniform(-r_max, r_max);
  Vector rs(n_modes);
  for (int i = 0; i < n_modes; ++i) {
    rs(i) = uniform(rng);
  }
  Matrix s = k1 * squeeze_layer(rs) * k2;
  return SymplecticMatrix{n_modes, std::move(s)};
}

}  // namespace gqec
