#pragma once

#include "nafd/quantizer.hpp"
#include "nafd/rates.hpp"
#include "nafd/scenario.hpp"
#include "nafd/scheme.hpp"

namespace nafd {

/// Circuit power constants. Units: W, W per bit/s, flops/W.
struct PowerParams {
  double p_rau = 0.1;
  double p_ue = 0.1;
  double p_syn = 1.0;
  double l_rau = 12.8e9;
  double xi_amp = 0.4;
  double p0 = 0.825;
  double p_bt = 0.25e-9;
  double a0 = 1e-4;
  double a1 = 0.02;
  /// Number of local oscillators; 0 means one per RAU.
  int rho_syn = 0;
  /// Apply the (T - tau1 - tau2) / T factor to the EE numerator.
  bool ee_prelog = false;

  void validate() const;
};

double p_adc_total(const BitAllocation& bits, const SystemConfig& cfg, const PowerParams& pp);
double p_tc(const BitAllocation& bits, const SystemConfig& cfg, const PowerParams& pp);
double p_transmit(const SystemConfig& cfg, const PowerParams& pp);
double p_linear_processing(const SystemConfig& cfg, const PowerParams& pp, Scheme scheme);
/// sum_rate in bits/s/Hz (raw, without pre-log).
double p_backhaul(double sum_rate, const SystemConfig& cfg, const PowerParams& pp);

double total_power(double sum_rate, const BitAllocation& bits, const SystemConfig& cfg,
                   const PowerParams& pp, Scheme scheme);

/// bits/Joule.
double energy_efficiency(const RateReport& rates, const BitAllocation& bits,
                         const SystemConfig& cfg, const PowerParams& pp, Scheme scheme);

}  // namespace nafd
