#include "nafd/beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace nafd {

namespace {

Eigen::MatrixXcd pseudo_inverse_columns(const Eigen::MatrixXcd& g) {
  if (g.rows() < g.cols()) throw std::invalid_argument("ZF needs at least as many antennas as users");
  const Eigen::MatrixXcd gram = g.adjoint() * g;
  return g * gram.ldlt().solve(Eigen::MatrixXcd::Identity(g.cols(), g.cols()));
}

}  // namespace

Eigen::MatrixXcd build_precoder(const Eigen::MatrixXcd& ghat, Scheme scheme) {
  Eigen::MatrixXcd w = scheme == Scheme::kMR ? ghat : pseudo_inverse_columns(ghat);
  for (Eigen::Index k = 0; k < w.cols(); ++k) {
    const double n = w.col(k).norm();
    if (n > 0.0 && std::isfinite(n)) w.col(k) /= n;
    else w.col(k).setZero();
  }
  return w;
}

Eigen::MatrixXcd build_combiner(const Eigen::MatrixXcd& a_ghat, Scheme scheme) {
  if (scheme == Scheme::kMR) return a_ghat;
  return pseudo_inverse_columns(a_ghat);
}

}  // namespace nafd
