#include "nafd/montecarlo.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "nafd/beamforming.hpp"
#include "nafd/channels.hpp"
#include "nafd/estimation.hpp"
#include "nafd/rng.hpp"

namespace nafd {

namespace {

struct TrialRates {
  std::vector<double> dl;
  std::vector<double> ul;
};

struct Shared {
  const SystemConfig& cfg;
  const ChannelStats& stats;
  Scheme scheme;
  CsiMode csi;
  IcMode ic;
  std::uint64_t seed;
  ClosedFormState cf;
  Eigen::VectorXd adc;
};

TrialRates run_trial(const Shared& sh, std::uint64_t trial) {
  const SystemConfig& cfg = sh.cfg;
  const ChannelRealization h = draw_channels(sh.stats, cfg, sh.seed, trial);

  Rng pilot_rng = make_rng(sh.seed, trial, Stream::kPilot);
  const PilotEstimates est =
      pilot_mmse_realize(h, sh.stats, cfg, sh.cf.theta_ul, sh.cf.theta_dl, pilot_rng);

  const Eigen::MatrixXcd g_dl_hat = est.stacked_dl_hat();
  const Eigen::MatrixXcd g_dl = g_dl_hat + est.stacked_dl_err();
  const Eigen::MatrixXcd w = build_precoder(g_dl_hat, sh.scheme);
  const Eigen::MatrixXcd mu = g_dl.adjoint() * w;

  TrialRates out;

  // DL: user k detects with mu_hat(k, k); the rest is treated as noise.
  Eigen::MatrixXcd mu_hat;
  if (sh.csi == CsiMode::kEstimated) {
    Rng bf_rng = make_rng(sh.seed, trial, Stream::kBfTraining);
    mu_hat = mu_hat_realize(mu, sh.cf.bf, sh.cf.xi, cfg, bf_rng);
  } else {
    mu_hat = mu_prior_mean(sh.cf.bf);
  }
  const Eigen::MatrixXcd mu_err = mu - mu_hat;
  const double p = cfg.p_dl;
  for (int k = 0; k < cfg.k_dl; ++k) {
    const double x = sh.cf.xi[static_cast<std::size_t>(k)];
    double inter = 0.0;
    double total = 0.0;
    for (int i = 0; i < cfg.k_dl; ++i) {
      if (i != k) inter += p * std::norm(mu_hat(k, i));
      inter += p * std::norm(mu_err(k, i));
      total += p * std::norm(mu(k, i));
    }
    const double cross = cfg.p_ul * h.u_i_user.row(k).squaredNorm();
    const double quant = (1.0 - x) / x * (total + cross + cfg.sigma2_dl);
    const double sinr = p * std::norm(mu_hat(k, k)) / (inter + cross + cfg.sigma2_dl + quant);
    out.dl.push_back(std::log2(1.0 + sinr));
  }

  // UL: quantized reception, optional cancellation of the estimated cross-link
  // interference, then linear combining.
  const Eigen::MatrixXcd f = h.stacked_interference() * w;
  Eigen::MatrixXcd f_res = f;
  if (sh.ic == IcMode::kWith) {
    Rng if_rng = make_rng(sh.seed, trial, Stream::kInterferenceTraining);
    f_res = f_hat_realize(f, sh.cf.interference, cfg, sh.cf.theta_ul, if_rng).ferr;
  }
  const Eigen::MatrixXcd g_ul_hat = est.stacked_ul_hat();
  const Eigen::MatrixXcd g_ul_err = est.stacked_ul_err();
  const Eigen::MatrixXcd g_ul = g_ul_hat + g_ul_err;
  const auto a = sh.adc.asDiagonal();
  const Eigen::MatrixXcd a_ghat = a * g_ul_hat;
  const Eigen::MatrixXcd v = build_combiner(a_ghat, sh.scheme);

  const Eigen::VectorXd rx_power =
      (cfg.p_ul * g_ul.rowwise().squaredNorm() + cfg.p_dl * f.rowwise().squaredNorm()).array() +
      cfg.sigma2_ul;
  const Eigen::VectorXd q_var = sh.adc.array() * (1.0 - sh.adc.array()) * rx_power.array();

  const Eigen::MatrixXcd eff_hat = v.adjoint() * a_ghat;
  const Eigen::MatrixXcd eff_err = v.adjoint() * (a * g_ul_err);
  const Eigen::MatrixXcd eff_if = v.adjoint() * (a * f_res);
  for (int k = 0; k < cfg.k_ul; ++k) {
    double inter = 0.0;
    for (int i = 0; i < cfg.k_ul; ++i) {
      if (i != k) inter += cfg.p_ul * std::norm(eff_hat(k, i));
      inter += cfg.p_ul * std::norm(eff_err(k, i));
    }
    inter += cfg.p_dl * eff_if.row(k).squaredNorm();
    const Eigen::VectorXcd vk = v.col(k);
    const double noise = (a * vk).squaredNorm() * cfg.sigma2_ul +
                         (vk.cwiseAbs2().array() * q_var.array()).sum();
    const double den = inter + noise;
    const double num = cfg.p_ul * std::norm(eff_hat(k, k));
    out.ul.push_back(den > 0.0 ? std::log2(1.0 + num / den) : 0.0);
  }
  return out;
}

}  // namespace

McResult summarize(const std::vector<double>& samples, double ci_level) {
  McResult r;
  r.trials_used = static_cast<int>(samples.size());
  if (samples.empty()) return r;
  double sum = 0.0;
  for (double s : samples) sum += s;
  r.mean = sum / static_cast<double>(samples.size());
  if (samples.size() < 2) return r;
  double ss = 0.0;
  for (double s : samples) ss += (s - r.mean) * (s - r.mean);
  const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
  const boost::math::normal_distribution<double> normal;
  const double z = boost::math::quantile(normal, 0.5 + ci_level / 2.0);
  r.half_width = z * sd / std::sqrt(static_cast<double>(samples.size()));
  return r;
}

McRates simulate_rates(const SystemConfig& cfg, const ChannelStats& stats, Scheme scheme,
                       const BitAllocation& bits, CsiMode csi, IcMode ic, const McConfig& mc,
                       const RateOptions& opts) {
  if (mc.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(mc.ci_level > 0.0 && mc.ci_level < 1.0))
    throw std::invalid_argument("ci_level must lie in (0, 1)");
  cfg.validate();
  bits.validate(cfg, 64);
  Shared sh{cfg,  stats, scheme, csi, ic, mc.seed, closed_form_state(stats, cfg, scheme, bits, ic, opts),
            adc_gain_vector(bits.ul_rau_bits, cfg.m, opts.rho_formula)};

  std::vector<TrialRates> per_trial(static_cast<std::size_t>(mc.trials));
  int workers = mc.threads > 0 ? mc.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, mc.trials);
  auto work = [&](int w) {
    for (int t = w; t < mc.trials; t += workers)
      per_trial[static_cast<std::size_t>(t)] = run_trial(sh, static_cast<std::uint64_t>(t));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  McRates out;
  std::vector<double> col(per_trial.size());
  for (int k = 0; k < cfg.k_dl; ++k) {
    for (std::size_t t = 0; t < per_trial.size(); ++t) col[t] = per_trial[t].dl[k];
    out.dl.push_back(summarize(col, mc.ci_level));
  }
  for (int k = 0; k < cfg.k_ul; ++k) {
    for (std::size_t t = 0; t < per_trial.size(); ++t) col[t] = per_trial[t].ul[k];
    out.ul.push_back(summarize(col, mc.ci_level));
  }
  auto user_mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  for (std::size_t t = 0; t < per_trial.size(); ++t) col[t] = user_mean(per_trial[t].dl);
  out.dl_avg = summarize(col, mc.ci_level);
  for (std::size_t t = 0; t < per_trial.size(); ++t) col[t] = user_mean(per_trial[t].ul);
  out.ul_avg = summarize(col, mc.ci_level);
  return out;
}

std::vector<McResult> simulate_dl_rate(const SystemConfig& cfg, const ChannelStats& stats,
                                       Scheme scheme, const BitAllocation& bits, CsiMode csi,
                                       const McConfig& mc, const RateOptions& opts) {
  return simulate_rates(cfg, stats, scheme, bits, csi, IcMode::kWith, mc, opts).dl;
}

std::vector<McResult> simulate_ul_rate(const SystemConfig& cfg, const ChannelStats& stats,
                                       Scheme scheme, const BitAllocation& bits, IcMode ic,
                                       const McConfig& mc, const RateOptions& opts) {
  return simulate_rates(cfg, stats, scheme, bits, CsiMode::kEstimated, ic, mc, opts).ul;
}

Comparison compare_closed_form(double closed, const McResult& mc, double tol) {
  Comparison c;
  c.closed_form = closed;
  c.mc_mean = mc.mean;
  c.mc_halfwidth = mc.half_width;
  c.rel_err = std::abs(closed - mc.mean) / std::max(mc.mean, 1e-12);
  c.pass = c.rel_err <= tol;
  return c;
}

}  // namespace nafd
