#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "nafd/channels.hpp"
#include "nafd/rng.hpp"
#include "nafd/scenario.hpp"
#include "nafd/scheme.hpp"

namespace nafd {

// ---------------------------------------------------------------------------
// Stage 1: UL pilot MMSE
// ---------------------------------------------------------------------------

/// Error-variance convention for the pilot stage. kOrthogonal enforces
/// beta + eta = lambda; kPrinted uses ((1-theta) p lambda + lambda s2) / (p lambda + s2),
/// which agrees only at lambda = 1.
enum class EtaFormula { kOrthogonal, kPrinted };

/// Estimate / error variances per (RAU, user) for both operating modes.
struct PilotEstStats {
  std::vector<std::vector<double>> beta_ul;  // [n_ul][k_ul]
  std::vector<std::vector<double>> eta_ul;
  std::vector<std::vector<double>> beta_dl;  // [n_dl][k_dl]
  std::vector<std::vector<double>> eta_dl;
};

double pilot_beta(double lambda, double theta, double p_up, double sigma2_up);
double pilot_eta(double lambda, double theta, double p_up, double sigma2_up,
                 EtaFormula formula = EtaFormula::kOrthogonal);

/// theta_ul / theta_dl: pilot-stage converter gain per UL / DL RAU.
PilotEstStats pilot_mmse_stats(const ChannelStats& stats, const SystemConfig& cfg,
                               std::span<const double> theta_ul, std::span<const double> theta_dl,
                               EtaFormula formula = EtaFormula::kOrthogonal);

struct PilotEstimates {
  std::vector<Eigen::MatrixXcd> ghat_ul, gerr_ul;  // shaped like ChannelRealization::g_ul
  std::vector<Eigen::MatrixXcd> ghat_dl, gerr_dl;  // shaped like ChannelRealization::g_dl

  Eigen::MatrixXcd stacked_ul_hat() const;  // N_UL*M x K_UL
  Eigen::MatrixXcd stacked_ul_err() const;
  Eigen::MatrixXcd stacked_dl_hat() const;  // N_DL*M x K_DL
  Eigen::MatrixXcd stacked_dl_err() const;
};

/// Simulates pilot reception, despreading onto orthogonal unit-norm pilots,
/// AQNM quantization of the despread observation and the scalar-gain MMSE.
PilotEstimates pilot_mmse_realize(const ChannelRealization& h, const ChannelStats& stats,
                                  const SystemConfig& cfg, std::span<const double> theta_ul,
                                  std::span<const double> theta_dl, Rng& rng);

// ---------------------------------------------------------------------------
// Gamma / Nakagami moment matching
// ---------------------------------------------------------------------------

struct GammaPair {
  double shape = 1.0;
  double scale = 1.0;
  double mean() const { return shape * scale; }
  double variance() const { return shape * scale * scale; }
};

/// ||x||^2 for x ~ CN(0, variance * I_dim) is Gamma(dim, variance).
struct GammaComponent {
  double dim = 1.0;
  double variance = 1.0;
};

/// Single Gamma matching the mean and variance of a sum of independent
/// Gamma(dim_i, variance_i) terms. Throws on an empty list.
GammaPair gamma_sum(std::span<const GammaComponent> parts);

/// Power of a dim-dimensional Gamma vector projected onto an s-dimensional subspace.
GammaPair gamma_project(const GammaPair& pair, double dim, double s);

/// E[sqrt(X)] for X ~ Gamma(shape, scale), evaluated through log-Gamma.
double nakagami_mean(const GammaPair& pair);

// ---------------------------------------------------------------------------
// Stage 2: beamforming training
// ---------------------------------------------------------------------------

struct BfTrainingStats {
  double e = 0.0;          // mean of the own effective gain mu_kk
  double chi_bar = 0.0;    // variance of mu_kk
  double chi_tilde = 0.0;  // chi_bar + (1 - xi) e^2
  double chi = 0.0;        // second moment of mu_ki, i != k
  double t_dl = 1.0;
  double t_ul = 1.0;
};

/// gamma_hat / gamma_err: moment-matched laws of ||ghat_k||^2 and ||gerr_k||^2
/// over the DL RAUs. Throws for ZF when N_DL*M < K_DL.
BfTrainingStats bf_training_stats(const GammaPair& gamma_hat, const GammaPair& gamma_err,
                                  const SystemConfig& cfg, Scheme scheme, double xi_k);

/// Per DL user, building the Gamma pairs from the DL-mode pilot statistics.
std::vector<BfTrainingStats> bf_training_stats_all(const PilotEstStats& pilot,
                                                   const SystemConfig& cfg, Scheme scheme,
                                                   std::span<const double> xi);

/// Scalar MMSE of mu_{k,i} from the quantized, despread beamforming pilot.
/// mu is K_DL x K_DL with mu(k, i) = g_k^H w_i.
Eigen::MatrixXcd mu_hat_realize(const Eigen::MatrixXcd& mu, std::span<const BfTrainingStats> bf,
                                std::span<const double> xi, const SystemConfig& cfg, Rng& rng);

/// Prior means used by statistical-CSI detection: e on the diagonal, 0 elsewhere.
Eigen::MatrixXcd mu_prior_mean(std::span<const BfTrainingStats> bf);

// ---------------------------------------------------------------------------
// Stage 2: effective inter-RAU interference channel at the UL RAUs
// ---------------------------------------------------------------------------

struct InterferenceEstStats {
  std::vector<std::vector<double>> delta;    // [n_ul][k_dl]
  std::vector<std::vector<double>> rho_res;  // [n_ul][k_dl]
  /// Per-antenna prior variance sum_m lambda_I[n][m] / N_DL, per UL RAU.
  std::vector<double> prior;
};

/// adc_gains: converter gain per UL RAU.
InterferenceEstStats interference_mmse(const ChannelStats& stats, const SystemConfig& cfg,
                                       std::span<const double> adc_gains);

/// Residual used when cancellation is off: the full prior per UL RAU.
InterferenceEstStats interference_without_cancellation(const ChannelStats& stats,
                                                       const SystemConfig& cfg);

struct InterferenceEstimates {
  Eigen::MatrixXcd fhat;  // N_UL*M x K_DL
  Eigen::MatrixXcd ferr;
};

/// f: N_UL*M x K_DL effective interference channels G_I w_i.
InterferenceEstimates f_hat_realize(const Eigen::MatrixXcd& f, const InterferenceEstStats& prior,
                                    const SystemConfig& cfg, std::span<const double> adc_gains,
                                    Rng& rng);

}  // namespace nafd
