#include "nafd/power.hpp"

#include <cmath>
#include <stdexcept>

namespace nafd {

void PowerParams::validate() const {
  if (!(p_rau > 0 && p_ue > 0 && p_syn > 0 && l_rau > 0 && p0 > 0 && p_bt > 0 && a0 >= 0 &&
        a1 >= 0))
    throw std::invalid_argument("power parameters must be positive");
  if (!(xi_amp > 0.0 && xi_amp <= 1.0)) throw std::invalid_argument("xi_amp must lie in (0, 1]");
  if (rho_syn < 0) throw std::invalid_argument("rho_syn must be >= 0");
}

double p_adc_total(const BitAllocation& bits, const SystemConfig& cfg, const PowerParams& pp) {
  double p = 0.0;
  for (int b : bits.ul_rau_bits) p += pp.a0 * cfg.m * std::exp2(b) + pp.a1;
  for (int b : bits.dl_rau_bits) p += pp.a0 * cfg.m * std::exp2(b) + pp.a1;
  for (int b : bits.dl_user_bits) p += pp.a0 * std::exp2(b) + pp.a1;
  return p;
}

double p_tc(const BitAllocation& bits, const SystemConfig& cfg, const PowerParams& pp) {
  const int n = cfg.n_total();
  const int oscillators = pp.rho_syn > 0 ? pp.rho_syn : n;
  return n * cfg.m * pp.p_rau + oscillators * pp.p_syn + cfg.k_total() * pp.p_ue +
         p_adc_total(bits, cfg, pp);
}

double p_transmit(const SystemConfig& cfg, const PowerParams& pp) {
  const double duty = static_cast<double>(cfg.t_frame - cfg.tau1 - cfg.tau2) /
                      (cfg.t_frame * pp.xi_amp);
  return cfg.k_ul * duty * cfg.p_ul + cfg.k_dl * duty * cfg.p_dl;
}

double p_linear_processing(const SystemConfig& cfg, const PowerParams& pp, Scheme scheme) {
  const double t = cfg.t_frame;
  const double tau = cfg.tau1 + cfg.tau2;
  const double wmnk = cfg.bandwidth_w * cfg.m * cfg.n_total() * cfg.k_total();
  const double data = (t - tau) / t * 2.0 * wmnk / pp.l_rau;
  const double training = scheme == Scheme::kMR ? wmnk * (3.0 * cfg.k_total() + 1.0) / pp.l_rau
                                                : 3.0 * wmnk / pp.l_rau;
  return data + tau / t * training;
}

double p_backhaul(double sum_rate, const SystemConfig& cfg, const PowerParams& pp) {
  return cfg.n_total() * (pp.p0 + cfg.bandwidth_w * pp.p_bt * sum_rate);
}

double total_power(double sum_rate, const BitAllocation& bits, const SystemConfig& cfg,
                   const PowerParams& pp, Scheme scheme) {
  return p_tc(bits, cfg, pp) + p_transmit(cfg, pp) + p_linear_processing(cfg, pp, scheme) +
         p_backhaul(sum_rate, cfg, pp);
}

double energy_efficiency(const RateReport& rates, const BitAllocation& bits,
                         const SystemConfig& cfg, const PowerParams& pp, Scheme scheme) {
  const double raw = rates.raw_sum();
  const double num = cfg.bandwidth_w * raw * (pp.ee_prelog ? cfg.prelog() : 1.0);
  return num / total_power(raw, bits, cfg, pp, scheme);
}

}  // namespace nafd
