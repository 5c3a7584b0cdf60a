#include "gqec/gecc.hpp"

#include <stdexcept>

namespace gqec {

namespace {

Matrix replicate_block(const Mat2& block, int n) {
  Matrix out = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    out.block<2, 2>(2 * i, 2 * i) = block;
  }
  return out;
}

}  // namespace

GECCode make_gecc(int n, SymplecticMatrix encoder, SymplecticMatrix decoder) {
  if (n < 1) {
    throw std::invalid_argument("gecc: need at least one mode");
  }
  if (encoder.n_modes != n || decoder.n_modes != n) {
    throw std::invalid_argument("gecc: encoder/decoder mode counts must equal n");
  }
  return GECCode{n, std::move(encoder), std::move(decoder)};
}

GaussianChannel effective_channel(const GECCode& code, const GaussianChannel& channel) {
  require_valid(channel);
  const int n = code.n;
  if (code.S_E.n_modes != n || code.S_D.n_modes != n) {
    throw std::invalid_argument("effective_channel: code dimensions are inconsistent");
  }
  const Matrix a = code.S_D.data * replicate_block(channel.M, n) * code.S_E.data;
  const Matrix b = code.S_D.data * replicate_block(channel.N, n) * code.S_D.data.transpose();

  const Mat2 m_gc = a.topLeftCorner<2, 2>();
  Mat2 n_gc = b.topLeftCorner<2, 2>();
  if (n > 1) {
    // Vacuum ancillas contribute identity covariance through the ancilla
    // columns of A.
    const Matrix a_anc = a.topRightCorner(2, 2 * (n - 1));
    n_gc += a_anc * a_anc.transpose();
  }
  return make_channel(m_gc, symmetrized(n_gc));
}

Real degradation_of_code(const GECCode& code, const GaussianChannel& channel) {
  return entanglement_degradation(effective_channel(code, channel)).D;
}

}  // namespace gqec
