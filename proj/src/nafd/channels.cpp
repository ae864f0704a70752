#include "nafd/channels.hpp"

#include <cmath>

#include "nafd/rng.hpp"

namespace nafd {

Eigen::VectorXcd ChannelRealization::stacked_ul(int k) const {
  const Eigen::Index m = g_ul.front().rows();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g_ul.size()) * m);
  for (std::size_t n = 0; n < g_ul.size(); ++n)
    v.segment(static_cast<Eigen::Index>(n) * m, m) = g_ul[n].col(k);
  return v;
}

Eigen::VectorXcd ChannelRealization::stacked_dl(int k) const {
  const Eigen::Index m = g_dl.front().rows();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g_dl.size()) * m);
  for (std::size_t n = 0; n < g_dl.size(); ++n)
    v.segment(static_cast<Eigen::Index>(n) * m, m) = g_dl[n].col(k);
  return v;
}

Eigen::MatrixXcd ChannelRealization::stacked_interference() const {
  const Eigen::Index m = g_i_rau.front().front().rows();
  const auto rows = static_cast<Eigen::Index>(g_i_rau.size());
  const auto cols = static_cast<Eigen::Index>(g_i_rau.front().size());
  Eigen::MatrixXcd g(rows * m, cols * m);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g.block(i * m, j * m, m, m) = g_i_rau[i][j];
  return g;
}

namespace {

Eigen::MatrixXcd draw_block(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale) {
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = scale * complex_normal(rng);
  return out;
}

}  // namespace

ChannelRealization draw_channels(const ChannelStats& stats, const SystemConfig& cfg,
                                 std::uint64_t seed, std::uint64_t trial) {
  ChannelRealization h;
  const int m = cfg.m;

  Rng ul = make_rng(seed, trial, Stream::kUplink);
  h.g_ul.resize(cfg.n_ul);
  for (int n = 0; n < cfg.n_ul; ++n) {
    h.g_ul[n].resize(m, cfg.k_ul);
    for (int k = 0; k < cfg.k_ul; ++k)
      h.g_ul[n].col(k) = draw_block(ul, m, 1, std::sqrt(stats.lambda_ul[n][k]));
  }

  Rng dl = make_rng(seed, trial, Stream::kDownlink);
  h.g_dl.resize(cfg.n_dl);
  for (int n = 0; n < cfg.n_dl; ++n) {
    h.g_dl[n].resize(m, cfg.k_dl);
    for (int k = 0; k < cfg.k_dl; ++k)
      h.g_dl[n].col(k) = draw_block(dl, m, 1, std::sqrt(stats.lambda_dl[n][k]));
  }

  Rng ir = make_rng(seed, trial, Stream::kInterRau);
  h.g_i_rau.assign(cfg.n_ul, std::vector<Eigen::MatrixXcd>(cfg.n_dl));
  for (int i = 0; i < cfg.n_ul; ++i)
    for (int j = 0; j < cfg.n_dl; ++j)
      h.g_i_rau[i][j] = draw_block(ir, m, m, std::sqrt(stats.lambda_i_rau[i][j]));

  Rng iu = make_rng(seed, trial, Stream::kInterUser);
  h.u_i_user.resize(cfg.k_dl, cfg.k_ul);
  for (int k = 0; k < cfg.k_dl; ++k)
    for (int j = 0; j < cfg.k_ul; ++j)
      h.u_i_user(k, j) = std::sqrt(stats.lambda_i_user[k][j]) * complex_normal(iu);
  return h;
}

}  // namespace nafd
