#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "nafd/rng.hpp"

namespace nafd {

struct SystemConfig;

/// Reading of the high-resolution (b >= 5) distortion formula.
enum class RhoFormula {
  kStandard,  // (pi * sqrt(3) / 2) * 4^-b, continuous with the b <= 4 table
  kLiteral,   // sqrt(3) / (2 * pi) * 4^-b
};

struct QuantOptions {
  int b_max = 12;
  RhoFormula formula = RhoFormula::kStandard;
};

/// Distortion factor of a b-bit converter. Throws for bits < 1.
double rho(int bits, RhoFormula formula = RhoFormula::kStandard);

/// 1 - rho(bits): the linear gain of the additive quantization noise model.
double quant_gain(int bits, RhoFormula formula = RhoFormula::kStandard);

struct QuantCoeff {
  double rho = 0.0;
  double gain = 1.0;
  static QuantCoeff from_bits(int bits, RhoFormula formula = RhoFormula::kStandard);
};

/// Converter resolutions for UL RAUs, DL RAUs and DL users, in that order.
struct BitAllocation {
  std::vector<int> ul_rau_bits;
  std::vector<int> dl_rau_bits;
  std::vector<int> dl_user_bits;

  static BitAllocation uniform(const SystemConfig& cfg, int bits);
  static BitAllocation from_groups(const SystemConfig& cfg, int ul_rau, int dl_rau, int dl_user);
  static BitAllocation from_flat(const SystemConfig& cfg, std::span<const int> flat);

  std::vector<int> flat() const;
  std::size_t size() const { return ul_rau_bits.size() + dl_rau_bits.size() + dl_user_bits.size(); }
  /// `u1 u2 ...;d1 d2 ...;k1 k2 ...` - also used as the memoization key.
  std::string key() const;
  std::string group_string(int group) const;

  void validate(const SystemConfig& cfg, int b_max) const;

  friend bool operator==(const BitAllocation&, const BitAllocation&) = default;
  friend auto operator<=>(const BitAllocation& a, const BitAllocation& b) {
    return a.flat() <=> b.flat();
  }
};

/// Variance of the additive quantization noise for one entry.
inline double aqnm_noise_variance(double gain, double inst_power) {
  return gain * (1.0 - gain) * inst_power;
}

/// gain .* signal + n_q, where n_q ~ CN(0, diag(gain (1 - gain) inst_power)).
Eigen::VectorXcd quantize(const Eigen::VectorXcd& signal, const Eigen::VectorXd& gains,
                          const Eigen::VectorXd& inst_power, Rng& rng);

/// Per-antenna gains: each converter's gain repeated m times.
Eigen::VectorXd adc_gain_vector(std::span<const int> bits, int m,
                                RhoFormula formula = RhoFormula::kStandard);

}  // namespace nafd
