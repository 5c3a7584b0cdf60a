#pragma once

#include <Eigen/Dense>

namespace gqec {

using Real = double;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

using Matrix = MatrixX<Real>;
using Vector = VectorX<Real>;
using Mat2 = Matrix2<Real>;

/// Largest absolute entry of m - m^T.
template <typename Derived>
Real symmetry_gap(const Eigen::MatrixBase<Derived>& m) {
  return (m.derived() - m.derived().transpose()).cwiseAbs().maxCoeff();
}

/// 0.5 (m + m^T), evaluated.
template <typename Derived>
typename Derived::PlainObject symmetrized(const Eigen::MatrixBase<Derived>& m) {
  return 0.5 * (m.derived() + m.derived().transpose());
}

template <typename DerivedA, typename DerivedB>
Real max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a.derived() - b.derived()).cwiseAbs().maxCoeff();
}

/// Block-diagonal direct sum [a 0; 0 b].
template <typename DerivedA, typename DerivedB>
Matrix direct_sum(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace gqec
