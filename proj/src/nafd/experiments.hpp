#pragma once

#include <optional>
#include <vector>

#include "nafd/config_io.hpp"
#include "nafd/moop/dqn.hpp"
#include "nafd/moop/nsga2.hpp"
#include "nafd/table.hpp"

namespace nafd {

/// Configuration plus the geometry and large-scale statistics it induces.
struct Scenario {
  ExperimentConfig cfg;
  Geometry geometry;
  ChannelStats stats;

  static Scenario build(const ExperimentConfig& cfg);
};

moop::Constraints make_constraints(const moop::Evaluator& ev, const ConstraintSettings& s);
BitAllocation reference_for(const Scenario& sc, Scheme scheme);

struct ValidateOptions {
  std::vector<Scheme> schemes{Scheme::kMR, Scheme::kZF};
  std::vector<CsiMode> csi{CsiMode::kEstimated, CsiMode::kStatistical};
  std::vector<IcMode> ic{IcMode::kWith, IcMode::kWithout};
  int bits_min = 1;
  int bits_max = 10;
  /// 0 keeps the configured trial count.
  int trials = 0;
  double tol = 0.10;
};

struct ValidateResult {
  /// scheme,csi_mode,ic_mode,bits,user,closed_form,mc_mean,mc_halfwidth,rel_err
  Table table;
  int points = 0;
  int failed = 0;
  bool all_pass() const { return failed == 0; }
};

/// Closed form against Monte Carlo for every requested point. DL rows carry
/// ic_mode "na" and UL rows csi_mode "na"; users are "dl:<k>", "ul:<k>", and
/// "dl:avg" / "ul:avg" for the user averages that decide pass/fail.
ValidateResult run_validate(const Scenario& sc, const ValidateOptions& opt);

struct SweepOptions {
  std::vector<Scheme> schemes{Scheme::kMR, Scheme::kZF};
  std::vector<CsiMode> csi{CsiMode::kEstimated, CsiMode::kStatistical};
  std::vector<IcMode> ic{IcMode::kWith, IcMode::kWithout};
  int bits_min = 1;
  int bits_max = 12;
};

/// scheme,csi_mode,ic_mode,bits,avg_dl,avg_ul,sum_se,ee,total_power_w
Table run_sweep_bits(const Scenario& sc, const SweepOptions& opt);

struct TradeoffOptions {
  Scheme scheme = Scheme::kMR;
  int bits_min = 4;
  int bits_max = 9;
  int m_min = 6;
  int m_max = 32;
  int m_step = 2;
};

/// m,bits,f1_se,f2_ee
Table run_tradeoff(const Scenario& sc, const TradeoffOptions& opt);

enum class Method { kNsga2, kDqn };
Method parse_method(std::string_view s);

struct OptimizeOptions {
  Scheme scheme = Scheme::kMR;
  Method method = Method::kNsga2;
};

struct OptimizeResult {
  /// f1_se,f2_ee,feasible,bits_ul_raus,bits_dl_raus,bits_dl_users
  Table front;
  /// iter,reward,loss,epsilon,best_reward_so_far (DQN only)
  Table trace;
  /// key,value
  Table summary;
};

OptimizeResult run_optimize(const Scenario& sc, const OptimizeOptions& opt);

}  // namespace nafd
