#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nafd {

/// Scenario scalars: counts, powers (W), noise variances (W), geometry (m),
/// frame lengths (symbols) and bandwidth (Hz).
struct SystemConfig {
  int n_ul = 3;
  int n_dl = 3;
  int k_ul = 2;
  int k_dl = 3;
  int m = 10;

  double radius = 1000.0;
  double min_access_dist = 30.0;
  /// Lower clamp on RAU-RAU distances.
  double rau_min_dist = 1.0;
  /// Distances are divided by this before the power law is applied.
  double pathloss_ref_m = 1000.0;

  double alpha_ul = 3.7;
  double alpha_dl = 3.7;
  double alpha_i = 3.0;

  double p_ul = 0.5;
  double p_dl = 0.5;
  double p_up = 0.5;
  double p_dp = 1.0;

  double sigma2_ul = 1.0;
  double sigma2_dl = 1.0;
  double sigma2_up = 1.0;
  double sigma2_dp = 1.0;

  int t_frame = 196;
  int tau1 = 5;
  int tau2 = 3;
  double bandwidth_w = 20e6;

  int n_total() const { return n_ul + n_dl; }
  int k_total() const { return k_ul + k_dl; }
  /// (T - tau1 - tau2) / T
  double prelog() const;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2& a, const Point2& b);

struct Geometry {
  std::vector<Point2> ul_raus;
  std::vector<Point2> dl_raus;
  std::vector<Point2> ul_users;
  std::vector<Point2> dl_users;

  /// `kind,index,x_m,y_m`
  std::string to_csv() const;
};

/// Large-scale gains. Row-major nested vectors:
///   lambda_ul[n][k]      UL RAU n  <- UL user k
///   lambda_dl[n][k]      DL RAU n  -> DL user k
///   lambda_i_user[k][j]  DL user k <- UL user j
///   lambda_i_rau[i][j]   UL RAU i  <- DL RAU j
struct ChannelStats {
  std::vector<std::vector<double>> lambda_ul;
  std::vector<std::vector<double>> lambda_dl;
  std::vector<std::vector<double>> lambda_i_user;
  std::vector<std::vector<double>> lambda_i_rau;
};

Geometry sample_geometry(const SystemConfig& cfg, std::uint64_t seed);

double path_gain(double distance_m, double exponent, double ref_m);

ChannelStats large_scale_fading(const Geometry& geom, const SystemConfig& cfg);

}  // namespace nafd
