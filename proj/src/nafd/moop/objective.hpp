#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "nafd/power.hpp"
#include "nafd/quantizer.hpp"
#include "nafd/rates.hpp"
#include "nafd/scenario.hpp"
#include "nafd/scheme.hpp"

namespace nafd::moop {

/// f1: pre-log weighted sum SE (bits/s/Hz); f2: EE (bits/Joule). Both maximized.
struct Objectives {
  double f1 = 0.0;
  double f2 = 0.0;
};

/// true when a is at least as good in both objectives and strictly better in one.
bool dominates(const Objectives& a, const Objectives& b);

struct Evaluation {
  Objectives obj;
  RateReport rates;
  double total_power = 0.0;
};

enum class PowerCapMode { kUpper, kLower, kOff };

PowerCapMode parse_power_cap_mode(const std::string& s);
std::string to_string(PowerCapMode m);

struct Constraints {
  double b_budget = 0.0;
  double r_ul_min = 1.5;
  double r_dl_min = 1.5;
  double p_cap = 0.0;
  PowerCapMode cap_mode = PowerCapMode::kUpper;
};

struct Feasibility {
  bool feasible = true;
  bool c1 = true;  // bit budget
  bool c2 = true;  // UL rate floors
  bool c3 = true;  // DL rate floors
  bool c4 = true;  // power cap
  /// Sum of normalized constraint excesses; 0 when feasible.
  double violation = 0.0;

  std::string describe() const;
};

/// Reference uniform allocation anchoring the power cap.
BitAllocation reference_allocation(const SystemConfig& cfg, Scheme scheme);

/// 12*M*N + 12*K_DL scaled to b_max.
double default_bit_budget(const SystemConfig& cfg, int b_max);

/// M * (RAU bits) + (user bits).
double weighted_bits(const BitAllocation& bits, const SystemConfig& cfg);

/// Memoized closed-form evaluation (estimated CSI, cancellation on).
/// Safe to call from several threads.
class Evaluator {
 public:
  Evaluator(SystemConfig cfg, ChannelStats stats, PowerParams power, Scheme scheme,
            RateOptions opts = {}, int b_max = 12);

  Evaluation evaluate(const BitAllocation& bits) const;

  const SystemConfig& config() const { return cfg_; }
  const ChannelStats& stats() const { return stats_; }
  const PowerParams& power() const { return power_; }
  Scheme scheme() const { return scheme_; }
  int b_max() const { return b_max_; }
  /// Number of distinct allocations evaluated so far.
  std::size_t evaluations() const;

 private:
  SystemConfig cfg_;
  ChannelStats stats_;
  PowerParams power_;
  Scheme scheme_;
  RateOptions opts_;
  int b_max_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<int>, Evaluation> cache_;
};

Constraints default_constraints(const Evaluator& ev, PowerCapMode mode = PowerCapMode::kUpper);

Feasibility check_feasible(const BitAllocation& bits, const Evaluation& ev,
                           const Constraints& cons, const SystemConfig& cfg);

}  // namespace nafd::moop
