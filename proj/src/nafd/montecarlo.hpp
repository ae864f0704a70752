#pragma once

#include <cstdint>
#include <vector>

#include "nafd/quantizer.hpp"
#include "nafd/rates.hpp"
#include "nafd/scenario.hpp"
#include "nafd/scheme.hpp"

namespace nafd {

struct McConfig {
  int trials = 2000;
  std::uint64_t seed = 1;
  double ci_level = 0.95;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
};

struct McResult {
  double mean = 0.0;
  double half_width = 0.0;
  int trials_used = 0;
};

struct McRates {
  std::vector<McResult> dl;
  std::vector<McResult> ul;
  /// Per-trial user average, summarized.
  McResult dl_avg;
  McResult ul_avg;
};

/// Averages instantaneous DL and UL rates over independent channel draws.
/// Each trial runs pilot estimation, precoding, beamforming training and
/// (for the UL) cross-link interference estimation and cancellation.
McRates simulate_rates(const SystemConfig& cfg, const ChannelStats& stats, Scheme scheme,
                       const BitAllocation& bits, CsiMode csi, IcMode ic, const McConfig& mc,
                       const RateOptions& opts = {});

std::vector<McResult> simulate_dl_rate(const SystemConfig& cfg, const ChannelStats& stats,
                                       Scheme scheme, const BitAllocation& bits, CsiMode csi,
                                       const McConfig& mc, const RateOptions& opts = {});

std::vector<McResult> simulate_ul_rate(const SystemConfig& cfg, const ChannelStats& stats,
                                       Scheme scheme, const BitAllocation& bits, IcMode ic,
                                       const McConfig& mc, const RateOptions& opts = {});

/// Mean and normal-approximation half-width of a sample.
McResult summarize(const std::vector<double>& samples, double ci_level);

struct Comparison {
  double closed_form = 0.0;
  double mc_mean = 0.0;
  double mc_halfwidth = 0.0;
  double rel_err = 0.0;
  bool pass = false;
};

/// |closed - mean| / max(mean, eps), pass when rel_err <= tol.
Comparison compare_closed_form(double closed, const McResult& mc, double tol);

}  // namespace nafd
