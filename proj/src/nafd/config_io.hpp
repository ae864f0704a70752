#pragma once

#include <cstdint>
#include <string>

#include "nafd/montecarlo.hpp"
#include "nafd/moop/dqn.hpp"
#include "nafd/moop/nsga2.hpp"
#include "nafd/power.hpp"
#include "nafd/quantizer.hpp"
#include "nafd/rates.hpp"
#include "nafd/scenario.hpp"

namespace nafd {

/// Constraint settings as written in a config file. Zero budget selects
/// 12*M*N + 12*K_DL; an empty reference selects the scheme default.
struct ConstraintSettings {
  double b_budget = 0.0;
  double r_ul_min = 1.5;
  double r_dl_min = 1.5;
  moop::PowerCapMode cap_mode = moop::PowerCapMode::kUpper;
  std::vector<int> reference_mr;  // {ul_rau, dl_rau, dl_user}
  std::vector<int> reference_zf;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  SystemConfig system;
  PowerParams power;
  QuantOptions quant;
  RateOptions rates;
  McConfig mc;
  ConstraintSettings constraints;
  moop::Nsga2Config nsga2;
  moop::DqnConfig dqn;
};

/// Parses YAML text. Unknown sections or keys are rejected.
ExperimentConfig parse_config(const std::string& yaml_text);

/// Throws std::runtime_error when the file cannot be read.
ExperimentConfig load_config(const std::string& path);

}  // namespace nafd
