#include "nafd/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nafd/quantizer.hpp"

namespace nafd {

double pilot_beta(double lambda, double theta, double p_up, double sigma2_up) {
  return p_up * theta * lambda * lambda / (p_up * lambda + sigma2_up);
}

double pilot_eta(double lambda, double theta, double p_up, double sigma2_up, EtaFormula formula) {
  if (formula == EtaFormula::kPrinted)
    return ((1.0 - theta) * p_up * lambda + lambda * sigma2_up) / (p_up * lambda + sigma2_up);
  return lambda - pilot_beta(lambda, theta, p_up, sigma2_up);
}

PilotEstStats pilot_mmse_stats(const ChannelStats& stats, const SystemConfig& cfg,
                               std::span<const double> theta_ul, std::span<const double> theta_dl,
                               EtaFormula formula) {
  if (theta_ul.size() != static_cast<std::size_t>(cfg.n_ul) ||
      theta_dl.size() != static_cast<std::size_t>(cfg.n_dl))
    throw std::invalid_argument("pilot_mmse_stats: one theta per RAU expected");

  auto fill = [&](const std::vector<std::vector<double>>& lambda, std::span<const double> theta,
                  std::vector<std::vector<double>>& beta, std::vector<std::vector<double>>& eta) {
    beta.assign(lambda.size(), {});
    eta.assign(lambda.size(), {});
    for (std::size_t n = 0; n < lambda.size(); ++n) {
      for (double l : lambda[n]) {
        beta[n].push_back(pilot_beta(l, theta[n], cfg.p_up, cfg.sigma2_up));
        eta[n].push_back(pilot_eta(l, theta[n], cfg.p_up, cfg.sigma2_up, formula));
      }
    }
  };
  PilotEstStats s;
  fill(stats.lambda_ul, theta_ul, s.beta_ul, s.eta_ul);
  fill(stats.lambda_dl, theta_dl, s.beta_dl, s.eta_dl);
  return s;
}

namespace {

Eigen::MatrixXcd stack(const std::vector<Eigen::MatrixXcd>& blocks) {
  const Eigen::Index m = blocks.front().rows();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(blocks.size()) * m, blocks.front().cols());
  for (std::size_t n = 0; n < blocks.size(); ++n)
    out.middleRows(static_cast<Eigen::Index>(n) * m, m) = blocks[n];
  return out;
}

// One RAU's despread, quantized pilot observation and its MMSE estimate.
void estimate_rau(const Eigen::MatrixXcd& g, const std::vector<double>& lambda, double theta,
                  const SystemConfig& cfg, Rng& rng, Eigen::MatrixXcd& ghat,
                  Eigen::MatrixXcd& gerr) {
  const Eigen::Index m = g.rows();
  const double sp = std::sqrt(cfg.p_up);
  ghat.resize(m, g.cols());
  for (Eigen::Index k = 0; k < g.cols(); ++k) {
    Eigen::VectorXcd rx(m);
    Eigen::VectorXd power(m);
    for (Eigen::Index a = 0; a < m; ++a) {
      rx[a] = sp * g(a, k) + complex_normal(rng, cfg.sigma2_up);
      power[a] = cfg.p_up * std::norm(g(a, k)) + cfg.sigma2_up;
    }
    const Eigen::VectorXcd y = quantize(rx, Eigen::VectorXd::Constant(m, theta), power, rng);
    const double l = lambda[static_cast<std::size_t>(k)];
    const double c = sp * l / (cfg.p_up * l + cfg.sigma2_up);
    ghat.col(k) = c * y;
  }
  gerr = g - ghat;
}

}  // namespace

Eigen::MatrixXcd PilotEstimates::stacked_ul_hat() const { return stack(ghat_ul); }
Eigen::MatrixXcd PilotEstimates::stacked_ul_err() const { return stack(gerr_ul); }
Eigen::MatrixXcd PilotEstimates::stacked_dl_hat() const { return stack(ghat_dl); }
Eigen::MatrixXcd PilotEstimates::stacked_dl_err() const { return stack(gerr_dl); }

PilotEstimates pilot_mmse_realize(const ChannelRealization& h, const ChannelStats& stats,
                                  const SystemConfig& cfg, std::span<const double> theta_ul,
                                  std::span<const double> theta_dl, Rng& rng) {
  PilotEstimates e;
  e.ghat_ul.resize(cfg.n_ul);
  e.gerr_ul.resize(cfg.n_ul);
  for (int n = 0; n < cfg.n_ul; ++n)
    estimate_rau(h.g_ul[n], stats.lambda_ul[n], theta_ul[n], cfg, rng, e.ghat_ul[n], e.gerr_ul[n]);
  e.ghat_dl.resize(cfg.n_dl);
  e.gerr_dl.resize(cfg.n_dl);
  for (int n = 0; n < cfg.n_dl; ++n)
    estimate_rau(h.g_dl[n], stats.lambda_dl[n], theta_dl[n], cfg, rng, e.ghat_dl[n], e.gerr_dl[n]);
  return e;
}

GammaPair gamma_sum(std::span<const GammaComponent> parts) {
  if (parts.empty()) throw std::invalid_argument("gamma_sum: empty component list");
  double mean = 0.0;
  double var = 0.0;
  for (const auto& p : parts) {
    if (p.dim < 1.0 || !(p.variance > 0.0))
      throw std::invalid_argument("gamma_sum: components need dim >= 1 and variance > 0");
    mean += p.dim * p.variance;
    var += p.dim * p.variance * p.variance;
  }
  return {mean * mean / var, var / mean};
}

GammaPair gamma_project(const GammaPair& pair, double dim, double s) {
  if (s < 1.0 || s > dim) throw std::invalid_argument("gamma_project: need 1 <= s <= dim");
  return {pair.shape * s / dim, pair.scale};
}

double nakagami_mean(const GammaPair& pair) {
  if (!(pair.shape > 0.0) || pair.scale < 0.0)
    throw std::invalid_argument("nakagami_mean: need shape > 0 and scale >= 0");
  return std::exp(std::lgamma(pair.shape + 0.5) - std::lgamma(pair.shape)) * std::sqrt(pair.scale);
}

BfTrainingStats bf_training_stats(const GammaPair& gamma_hat, const GammaPair& gamma_err,
                                  const SystemConfig& cfg, Scheme scheme, double xi_k) {
  const double nm_dl = static_cast<double>(cfg.n_dl) * cfg.m;
  const double nm_ul = static_cast<double>(cfg.n_ul) * cfg.m;
  if (scheme == Scheme::kZF && nm_dl < cfg.k_dl)
    throw std::invalid_argument("bf_training_stats: ZF needs N_DL*M >= K_DL");

  BfTrainingStats s;
  s.t_dl = (nm_dl - cfg.k_dl + 1.0) / nm_dl;
  s.t_ul = (nm_ul - cfg.k_ul + 1.0) / nm_ul;

  const double own = scheme == Scheme::kZF ? s.t_dl : 1.0;
  const double err_power = gamma_err.mean() / nm_dl;
  s.e = nakagami_mean({own * gamma_hat.shape, gamma_hat.scale});
  s.chi_bar = own * gamma_hat.mean() - s.e * s.e + err_power;
  s.chi = (gamma_hat.mean() + gamma_err.mean()) / nm_dl;
  s.chi_tilde = s.chi_bar + (1.0 - xi_k) * s.e * s.e;
  return s;
}

namespace {

GammaPair gamma_over_raus(const std::vector<std::vector<double>>& var, std::size_t k, int m) {
  std::vector<GammaComponent> parts;
  for (const auto& row : var)
    if (row[k] > 0.0) parts.push_back({static_cast<double>(m), row[k]});
  if (parts.empty()) return {static_cast<double>(m) * static_cast<double>(var.size()), 0.0};
  return gamma_sum(parts);
}

}  // namespace

std::vector<BfTrainingStats> bf_training_stats_all(const PilotEstStats& pilot,
                                                   const SystemConfig& cfg, Scheme scheme,
                                                   std::span<const double> xi) {
  std::vector<BfTrainingStats> out;
  out.reserve(cfg.k_dl);
  for (int k = 0; k < cfg.k_dl; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out.push_back(bf_training_stats(gamma_over_raus(pilot.beta_dl, kk, cfg.m),
                                    gamma_over_raus(pilot.eta_dl, kk, cfg.m), cfg, scheme,
                                    xi[kk]));
  }
  return out;
}

Eigen::MatrixXcd mu_hat_realize(const Eigen::MatrixXcd& mu, std::span<const BfTrainingStats> bf,
                                std::span<const double> xi, const SystemConfig& cfg, Rng& rng) {
  const Eigen::Index kdl = mu.rows();
  const double p = cfg.p_dp;
  const double sp = std::sqrt(p);
  const double s2 = cfg.sigma2_dp;
  Eigen::MatrixXcd out(kdl, mu.cols());
  for (Eigen::Index k = 0; k < kdl; ++k) {
    const auto& st = bf[static_cast<std::size_t>(k)];
    const double x = xi[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < mu.cols(); ++i) {
      Eigen::VectorXcd rx(1);
      rx[0] = sp * mu(k, i) + complex_normal(rng, s2);
      const Eigen::VectorXd power = Eigen::VectorXd::Constant(1, p * std::norm(mu(k, i)) + s2);
      const std::complex<double> r = quantize(rx, Eigen::VectorXd::Constant(1, x), power, rng)[0];
      if (i == k) {
        const double c = sp * st.chi_bar / (p * st.chi_tilde + s2);
        out(k, i) = st.e + c * (r - x * sp * st.e);
      } else {
        const double c = sp * st.chi / (p * st.chi + s2);
        out(k, i) = c * r;
      }
    }
  }
  return out;
}

Eigen::MatrixXcd mu_prior_mean(std::span<const BfTrainingStats> bf) {
  const auto k = static_cast<Eigen::Index>(bf.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) out(i, i) = bf[static_cast<std::size_t>(i)].e;
  return out;
}

InterferenceEstStats interference_mmse(const ChannelStats& stats, const SystemConfig& cfg,
                                       std::span<const double> adc_gains) {
  if (adc_gains.size() != static_cast<std::size_t>(cfg.n_ul))
    throw std::invalid_argument("interference_mmse: one gain per UL RAU expected");
  const double ndl = cfg.n_dl;
  InterferenceEstStats s;
  s.delta.assign(cfg.n_ul, std::vector<double>(cfg.k_dl));
  s.rho_res.assign(cfg.n_ul, std::vector<double>(cfg.k_dl));
  s.prior.resize(cfg.n_ul);
  for (int j = 0; j < cfg.n_ul; ++j) {
    double sum = 0.0;
    for (double l : stats.lambda_i_rau[j]) sum += l;
    const double d = std::sqrt(cfg.p_dp * adc_gains[j]) * sum /
                     std::sqrt(ndl * cfg.p_dp * sum + ndl * ndl * cfg.sigma2_up);
    s.prior[j] = sum / ndl;
    for (int i = 0; i < cfg.k_dl; ++i) {
      s.delta[j][i] = d;
      s.rho_res[j][i] = std::max(0.0, (sum - d * d * ndl) / ndl);
    }
  }
  return s;
}

InterferenceEstStats interference_without_cancellation(const ChannelStats& stats,
                                                       const SystemConfig& cfg) {
  InterferenceEstStats s;
  s.delta.assign(cfg.n_ul, std::vector<double>(cfg.k_dl, 0.0));
  s.rho_res.assign(cfg.n_ul, std::vector<double>(cfg.k_dl));
  s.prior.resize(cfg.n_ul);
  for (int j = 0; j < cfg.n_ul; ++j) {
    double sum = 0.0;
    for (double l : stats.lambda_i_rau[j]) sum += l;
    s.prior[j] = sum / cfg.n_dl;
    for (int i = 0; i < cfg.k_dl; ++i) s.rho_res[j][i] = s.prior[j];
  }
  return s;
}

InterferenceEstimates f_hat_realize(const Eigen::MatrixXcd& f, const InterferenceEstStats& prior,
                                    const SystemConfig& cfg, std::span<const double> adc_gains,
                                    Rng& rng) {
  const int m = cfg.m;
  const double p = cfg.p_dp;
  const double sp = std::sqrt(p);
  const double s2 = cfg.sigma2_up;
  InterferenceEstimates e;
  e.fhat.resize(f.rows(), f.cols());
  for (Eigen::Index i = 0; i < f.cols(); ++i) {
    for (int j = 0; j < cfg.n_ul; ++j) {
      const Eigen::Index off = static_cast<Eigen::Index>(j) * m;
      Eigen::VectorXcd rx(m);
      Eigen::VectorXd power(m);
      for (int a = 0; a < m; ++a) {
        rx[a] = sp * f(off + a, i) + complex_normal(rng, s2);
        power[a] = p * std::norm(f(off + a, i)) + s2;
      }
      const Eigen::VectorXcd y =
          quantize(rx, Eigen::VectorXd::Constant(m, adc_gains[static_cast<std::size_t>(j)]), power,
                   rng);
      const double l = prior.prior[static_cast<std::size_t>(j)];
      e.fhat.block(off, i, m, 1) = (sp * l / (p * l + s2)) * y;
    }
  }
  e.ferr = f - e.fhat;
  return e;
}

}  // namespace nafd
