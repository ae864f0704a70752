#include "nafd/quantizer.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nafd/scenario.hpp"

namespace nafd {

namespace {
constexpr std::array<double, 4> kRhoTable = {0.3634, 0.1175, 0.0345, 0.0095};
}

double rho(int bits, RhoFormula formula) {
  if (bits < 1) throw std::invalid_argument("rho: bits must be >= 1");
  if (bits <= 4) return kRhoTable[bits - 1];
  const double scale = formula == RhoFormula::kStandard
                           ? std::numbers::pi * std::sqrt(3.0) / 2.0
                           : std::sqrt(3.0) / (2.0 * std::numbers::pi);
  return scale * std::pow(4.0, -bits);
}

double quant_gain(int bits, RhoFormula formula) { return 1.0 - rho(bits, formula); }

QuantCoeff QuantCoeff::from_bits(int bits, RhoFormula formula) {
  const double r = nafd::rho(bits, formula);
  return {r, 1.0 - r};
}

BitAllocation BitAllocation::uniform(const SystemConfig& cfg, int bits) {
  return from_groups(cfg, bits, bits, bits);
}

BitAllocation BitAllocation::from_groups(const SystemConfig& cfg, int ul_rau, int dl_rau,
                                         int dl_user) {
  BitAllocation b;
  b.ul_rau_bits.assign(cfg.n_ul, ul_rau);
  b.dl_rau_bits.assign(cfg.n_dl, dl_rau);
  b.dl_user_bits.assign(cfg.k_dl, dl_user);
  return b;
}

BitAllocation BitAllocation::from_flat(const SystemConfig& cfg, std::span<const int> flat) {
  const std::size_t want = static_cast<std::size_t>(cfg.n_ul + cfg.n_dl + cfg.k_dl);
  if (flat.size() != want) throw std::invalid_argument("BitAllocation: flat vector has wrong length");
  BitAllocation b;
  auto it = flat.begin();
  b.ul_rau_bits.assign(it, it + cfg.n_ul);
  it += cfg.n_ul;
  b.dl_rau_bits.assign(it, it + cfg.n_dl);
  it += cfg.n_dl;
  b.dl_user_bits.assign(it, flat.end());
  return b;
}

std::vector<int> BitAllocation::flat() const {
  std::vector<int> out;
  out.reserve(size());
  out.insert(out.end(), ul_rau_bits.begin(), ul_rau_bits.end());
  out.insert(out.end(), dl_rau_bits.begin(), dl_rau_bits.end());
  out.insert(out.end(), dl_user_bits.begin(), dl_user_bits.end());
  return out;
}

std::string BitAllocation::group_string(int group) const {
  const std::vector<int>& v = group == 0 ? ul_rau_bits : group == 1 ? dl_rau_bits : dl_user_bits;
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string BitAllocation::key() const {
  return group_string(0) + ";" + group_string(1) + ";" + group_string(2);
}

void BitAllocation::validate(const SystemConfig& cfg, int b_max) const {
  if (ul_rau_bits.size() != static_cast<std::size_t>(cfg.n_ul) ||
      dl_rau_bits.size() != static_cast<std::size_t>(cfg.n_dl) ||
      dl_user_bits.size() != static_cast<std::size_t>(cfg.k_dl))
    throw std::invalid_argument("BitAllocation: group sizes do not match the scenario");
  for (int b : flat())
    if (b < 1 || b > b_max)
      throw std::invalid_argument("BitAllocation: entry " + std::to_string(b) +
                                  " outside [1, " + std::to_string(b_max) + "]");
}

Eigen::VectorXcd quantize(const Eigen::VectorXcd& signal, const Eigen::VectorXd& gains,
                          const Eigen::VectorXd& inst_power, Rng& rng) {
  if (gains.size() != signal.size() || inst_power.size() != signal.size())
    throw std::invalid_argument("quantize: gains/inst_power not aligned with signal");
  Eigen::VectorXcd out(signal.size());
  for (Eigen::Index i = 0; i < signal.size(); ++i) {
    if (inst_power[i] < 0.0) throw std::invalid_argument("quantize: negative inst_power");
    const double var = aqnm_noise_variance(gains[i], inst_power[i]);
    out[i] = gains[i] * signal[i];
    if (var > 0.0) out[i] += complex_normal(rng, var);
  }
  return out;
}

Eigen::VectorXd adc_gain_vector(std::span<const int> bits, int m, RhoFormula formula) {
  Eigen::VectorXd g(static_cast<Eigen::Index>(bits.size()) * m);
  for (std::size_t n = 0; n < bits.size(); ++n)
    g.segment(static_cast<Eigen::Index>(n) * m, m).setConstant(quant_gain(bits[n], formula));
  return g;
}

}  // namespace nafd
