#include "nafd/rates.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nafd {

double RateReport::raw_sum() const {
  return std::accumulate(r_ul.begin(), r_ul.end(), 0.0) +
         std::accumulate(r_dl.begin(), r_dl.end(), 0.0);
}

void check_scheme_dimensions(const SystemConfig& cfg, Scheme scheme) {
  if (scheme != Scheme::kZF) return;
  if (cfg.n_dl * cfg.m < cfg.k_dl) throw std::invalid_argument("ZF needs N_DL*M >= K_DL");
  if (cfg.n_ul * cfg.m < cfg.k_ul) throw std::invalid_argument("ZF needs N_UL*M >= K_UL");
}

namespace {

double cross_user_interference(const ChannelStats& stats, const SystemConfig& cfg, int k) {
  double s = 0.0;
  for (double l : stats.lambda_i_user[static_cast<std::size_t>(k)]) s += cfg.p_ul * l;
  return s;
}

void check_dl_inputs(std::span<const BfTrainingStats> bf, const SystemConfig& cfg,
                     std::span<const double> xi) {
  if (bf.size() != static_cast<std::size_t>(cfg.k_dl) ||
      xi.size() != static_cast<std::size_t>(cfg.k_dl))
    throw std::invalid_argument("DL rate: one entry per DL user expected");
}

}  // namespace

std::vector<double> dl_rate_estimated(std::span<const BfTrainingStats> bf,
                                      const ChannelStats& stats, const SystemConfig& cfg,
                                      std::span<const double> xi) {
  check_dl_inputs(bf, cfg, xi);
  std::vector<double> r(static_cast<std::size_t>(cfg.k_dl), 0.0);
  if (cfg.p_dl <= 0.0) return r;
  const double p = cfg.p_dl;
  const double pp = cfg.p_dp;
  for (int k = 0; k < cfg.k_dl; ++k) {
    const auto& s = bf[static_cast<std::size_t>(k)];
    const double x = xi[static_cast<std::size_t>(k)];
    const double e2 = s.e * s.e;
    const double den_f = pp * (s.chi_bar + (1.0 - x) * e2) + cfg.sigma2_dp;
    const double f = pp * s.chi_bar * s.chi_bar / den_f;
    const double a = (cfg.k_dl - 1) * x * p * s.chi + cross_user_interference(stats, cfg, k);
    const double b =
        x * p * ((1.0 - x) * pp * s.chi_bar * e2 + s.chi_bar * cfg.sigma2_dp) / den_f;
    const double c = (1.0 - x) * p * (s.chi_bar + e2);
    r[static_cast<std::size_t>(k)] = std::log2(1.0 + x * p * (e2 + f) / (a + b + c + cfg.sigma2_dl));
  }
  return r;
}

std::vector<double> dl_rate_statistical(std::span<const BfTrainingStats> bf,
                                        const ChannelStats& stats, const SystemConfig& cfg,
                                        std::span<const double> xi) {
  check_dl_inputs(bf, cfg, xi);
  std::vector<double> r(static_cast<std::size_t>(cfg.k_dl), 0.0);
  if (cfg.p_dl <= 0.0) return r;
  const double p = cfg.p_dl;
  for (int k = 0; k < cfg.k_dl; ++k) {
    const auto& s = bf[static_cast<std::size_t>(k)];
    const double x = xi[static_cast<std::size_t>(k)];
    const double e2 = s.e * s.e;
    const double a = (cfg.k_dl - 1) * x * p * s.chi + p * s.chi_bar;
    const double b = cross_user_interference(stats, cfg, k) + (1.0 - x) * p * e2;
    r[static_cast<std::size_t>(k)] = std::log2(1.0 + x * p * e2 / (a + b + cfg.sigma2_dl));
  }
  return r;
}

std::vector<double> ul_rate(const PilotEstStats& pilot, const InterferenceEstStats& interference,
                            const SystemConfig& cfg, Scheme scheme, std::span<const double> alpha) {
  check_scheme_dimensions(cfg, scheme);
  if (alpha.size() != static_cast<std::size_t>(cfg.n_ul))
    throw std::invalid_argument("ul_rate: one gain per UL RAU expected");
  std::vector<double> r(static_cast<std::size_t>(cfg.k_ul), 0.0);
  if (cfg.p_ul <= 0.0) return r;

  const double p = cfg.p_ul;
  const double m = cfg.m;
  const double nul = cfg.n_ul;
  const double t_ul = (nul * m - cfg.k_ul + 1.0) / (nul * m);
  for (int k = 0; k < cfg.k_ul; ++k) {
    double a = 0.0;
    double b = 0.0;
    double c_sum = 0.0;
    double alpha_sum = 0.0;
    for (int n = 0; n < cfg.n_ul; ++n) {
      const double al = alpha[static_cast<std::size_t>(n)];
      const auto& beta = pilot.beta_ul[static_cast<std::size_t>(n)];
      const auto& eta = pilot.eta_ul[static_cast<std::size_t>(n)];
      const auto& rho = interference.rho_res[static_cast<std::size_t>(n)];
      alpha_sum += al;
      a += al * al * beta[static_cast<std::size_t>(k)];
      b += al * (1.0 - al) * beta[static_cast<std::size_t>(k)];

      double c = 0.0;
      for (int i = 0; i < cfg.k_ul; ++i) c += p * eta[static_cast<std::size_t>(i)];
      if (scheme == Scheme::kMR) {
        c += cfg.p_dl * rho.front();
        for (int i = 0; i < cfg.k_ul; ++i)
          if (i != k) c += p * beta[static_cast<std::size_t>(i)];
      } else {
        for (int j = 0; j < cfg.k_dl; ++j)
          c += cfg.p_dl * rho[static_cast<std::size_t>(j)] * rho[static_cast<std::size_t>(j)];
        c += cfg.sigma2_ul;
      }
      c_sum += al * c;
    }
    const double scale = scheme == Scheme::kMR ? p * m : t_ul * p * m;
    a *= scale;
    b *= scale;
    if (scheme == Scheme::kMR) a += cfg.sigma2_ul / nul * alpha_sum;
    r[static_cast<std::size_t>(k)] = std::log2(1.0 + a / (b + c_sum / nul));
  }
  return r;
}

double sum_se(std::span<const double> r_ul, std::span<const double> r_dl, const SystemConfig& cfg) {
  const double total = std::accumulate(r_ul.begin(), r_ul.end(), 0.0) +
                       std::accumulate(r_dl.begin(), r_dl.end(), 0.0);
  return cfg.prelog() * total;
}

ClosedFormState closed_form_state(const ChannelStats& stats, const SystemConfig& cfg,
                                  Scheme scheme, const BitAllocation& bits, IcMode ic,
                                  const RateOptions& opts) {
  check_scheme_dimensions(cfg, scheme);
  ClosedFormState st;
  for (int b : bits.ul_rau_bits) st.theta_ul.push_back(quant_gain(b, opts.rho_formula));
  for (int b : bits.dl_rau_bits) st.theta_dl.push_back(quant_gain(b, opts.rho_formula));
  for (int b : bits.dl_user_bits) st.xi.push_back(quant_gain(b, opts.rho_formula));
  st.pilot = pilot_mmse_stats(stats, cfg, st.theta_ul, st.theta_dl, opts.eta_formula);
  st.bf = bf_training_stats_all(st.pilot, cfg, scheme, st.xi);
  st.interference = ic == IcMode::kWith ? interference_mmse(stats, cfg, st.theta_ul)
                                        : interference_without_cancellation(stats, cfg);
  return st;
}

RateReport closed_form_rates(const ChannelStats& stats, const SystemConfig& cfg, Scheme scheme,
                             const BitAllocation& bits, CsiMode csi, IcMode ic,
                             const RateOptions& opts) {
  const ClosedFormState st = closed_form_state(stats, cfg, scheme, bits, ic, opts);
  RateReport rep;
  rep.csi_mode = csi;
  rep.ic_mode = ic;
  rep.r_dl = csi == CsiMode::kEstimated ? dl_rate_estimated(st.bf, stats, cfg, st.xi)
                                        : dl_rate_statistical(st.bf, stats, cfg, st.xi);
  rep.r_ul = ul_rate(st.pilot, st.interference, cfg, scheme, st.theta_ul);
  rep.sum_se = sum_se(rep.r_ul, rep.r_dl, cfg);
  return rep;
}

}  // namespace nafd
