#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nafd/scenario.hpp"

namespace nafd {

/// One small-scale draw for every link class, already scaled by sqrt(lambda).
struct ChannelRealization {
  /// g_ul[n] is M x K_UL: column k is the channel UL user k -> UL RAU n.
  std::vector<Eigen::MatrixXcd> g_ul;
  /// g_dl[n] is M x K_DL: column k is the channel DL RAU n -> DL user k.
  std::vector<Eigen::MatrixXcd> g_dl;
  /// g_i_rau[i][j] is M x M: DL RAU j -> UL RAU i.
  std::vector<std::vector<Eigen::MatrixXcd>> g_i_rau;
  /// u_i_user(k, j): UL user j -> DL user k.
  Eigen::MatrixXcd u_i_user;

  /// Channel of UL user k stacked over UL RAUs (N_UL*M).
  Eigen::VectorXcd stacked_ul(int k) const;
  /// Channel of DL user k stacked over DL RAUs (N_DL*M).
  Eigen::VectorXcd stacked_dl(int k) const;
  /// Full inter-RAU matrix G_I (N_UL*M x N_DL*M).
  Eigen::MatrixXcd stacked_interference() const;
};

/// Draws are keyed on (seed, trial) with one sub-stream per link class.
ChannelRealization draw_channels(const ChannelStats& stats, const SystemConfig& cfg,
                                 std::uint64_t seed, std::uint64_t trial = 0);

}  // namespace nafd
