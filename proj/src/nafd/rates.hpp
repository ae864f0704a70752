#pragma once

#include <span>
#include <vector>

#include "nafd/estimation.hpp"
#include "nafd/quantizer.hpp"
#include "nafd/scenario.hpp"
#include "nafd/scheme.hpp"

namespace nafd {

struct RateOptions {
  RhoFormula rho_formula = RhoFormula::kStandard;
  EtaFormula eta_formula = EtaFormula::kOrthogonal;
};

/// Per-user rates (bits/s/Hz) and the pre-log weighted sum.
struct RateReport {
  std::vector<double> r_dl;
  std::vector<double> r_ul;
  double sum_se = 0.0;
  CsiMode csi_mode = CsiMode::kEstimated;
  IcMode ic_mode = IcMode::kWith;

  double raw_sum() const;
};

/// Throws std::invalid_argument when ZF lacks spatial dimensions.
void check_scheme_dimensions(const SystemConfig& cfg, Scheme scheme);

/// DL rates with beamforming-trained CSI at the users. xi: per-user gain.
std::vector<double> dl_rate_estimated(std::span<const BfTrainingStats> bf,
                                      const ChannelStats& stats, const SystemConfig& cfg,
                                      std::span<const double> xi);

/// DL rates when users detect with the prior mean of their effective gain.
std::vector<double> dl_rate_statistical(std::span<const BfTrainingStats> bf,
                                        const ChannelStats& stats, const SystemConfig& cfg,
                                        std::span<const double> xi);

/// UL rates. alpha: converter gain per UL RAU; interference holds the residual
/// cross-link power (with or without cancellation).
std::vector<double> ul_rate(const PilotEstStats& pilot, const InterferenceEstStats& interference,
                            const SystemConfig& cfg, Scheme scheme, std::span<const double> alpha);

double sum_se(std::span<const double> r_ul, std::span<const double> r_dl, const SystemConfig& cfg);

/// Intermediate closed-form quantities for one allocation.
struct ClosedFormState {
  std::vector<double> theta_ul;  // UL RAU converter gains
  std::vector<double> theta_dl;  // DL RAU converter gains
  std::vector<double> xi;        // DL user converter gains
  PilotEstStats pilot;
  std::vector<BfTrainingStats> bf;
  InterferenceEstStats interference;
};

ClosedFormState closed_form_state(const ChannelStats& stats, const SystemConfig& cfg,
                                  Scheme scheme, const BitAllocation& bits, IcMode ic,
                                  const RateOptions& opts = {});

RateReport closed_form_rates(const ChannelStats& stats, const SystemConfig& cfg, Scheme scheme,
                             const BitAllocation& bits, CsiMode csi, IcMode ic,
                             const RateOptions& opts = {});

}  // namespace nafd
