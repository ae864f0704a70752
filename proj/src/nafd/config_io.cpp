#include "nafd/config_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nafd {

namespace {

using Setter = std::function<void(const YAML::Node&)>;

template <typename T>
Setter set(T& field) {
  return [&field](const YAML::Node& n) { field = n.as<T>(); };
}

void apply_section(const YAML::Node& node, const std::string& name,
                   const std::map<std::string, Setter>& keys) {
  if (!node.IsMap()) throw std::invalid_argument("config section '" + name + "' must be a map");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto it = keys.find(key);
    if (it == keys.end())
      throw std::invalid_argument("unknown key '" + key + "' in config section '" + name + "'");
    try {
      it->second(kv.second);
    } catch (const YAML::Exception& e) {
      throw std::invalid_argument("bad value for '" + name + "." + key + "': " + e.what());
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("config is not valid YAML: ") + e.what());
  }
  ExperimentConfig c;
  if (root.IsNull()) return c;
  if (!root.IsMap()) throw std::invalid_argument("config root must be a map");

  SystemConfig& s = c.system;
  PowerParams& p = c.power;
  auto& q = c.quant;
  auto& k = c.constraints;
  auto& g = c.nsga2;
  auto& d = c.dqn;

  std::string rho_formula = "standard";
  std::string eta_formula = "orthogonal";
  std::string cap_mode = moop::to_string(k.cap_mode);
  std::string init = "he";

  const std::map<std::string, std::map<std::string, Setter>> sections = {
      {"system",
       {{"n_ul", set(s.n_ul)},
        {"n_dl", set(s.n_dl)},
        {"k_ul", set(s.k_ul)},
        {"k_dl", set(s.k_dl)},
        {"m", set(s.m)},
        {"radius", set(s.radius)},
        {"min_access_dist", set(s.min_access_dist)},
        {"rau_min_dist", set(s.rau_min_dist)},
        {"pathloss_ref_m", set(s.pathloss_ref_m)},
        {"alpha_ul", set(s.alpha_ul)},
        {"alpha_dl", set(s.alpha_dl)},
        {"alpha_i", set(s.alpha_i)},
        {"p_ul", set(s.p_ul)},
        {"p_dl", set(s.p_dl)},
        {"p_up", set(s.p_up)},
        {"p_dp", set(s.p_dp)},
        {"sigma2_ul", set(s.sigma2_ul)},
        {"sigma2_dl", set(s.sigma2_dl)},
        {"sigma2_up", set(s.sigma2_up)},
        {"sigma2_dp", set(s.sigma2_dp)},
        {"t_frame", set(s.t_frame)},
        {"tau1", set(s.tau1)},
        {"tau2", set(s.tau2)},
        {"bandwidth_w", set(s.bandwidth_w)}}},
      {"power",
       {{"p_rau", set(p.p_rau)},
        {"p_ue", set(p.p_ue)},
        {"p_syn", set(p.p_syn)},
        {"l_rau", set(p.l_rau)},
        {"xi_amp", set(p.xi_amp)},
        {"p0", set(p.p0)},
        {"p_bt", set(p.p_bt)},
        {"a0", set(p.a0)},
        {"a1", set(p.a1)},
        {"rho_syn", set(p.rho_syn)},
        {"ee_prelog", set(p.ee_prelog)}}},
      {"quantizer", {{"b_max", set(q.b_max)}, {"rho_formula", set(rho_formula)}}},
      {"estimation", {{"eta_formula", set(eta_formula)}}},
      {"montecarlo",
       {{"trials", set(c.mc.trials)},
        {"ci_level", set(c.mc.ci_level)},
        {"threads", set(c.mc.threads)}}},
      {"constraints",
       {{"b_budget", set(k.b_budget)},
        {"r_ul_min", set(k.r_ul_min)},
        {"r_dl_min", set(k.r_dl_min)},
        {"cap_mode", set(cap_mode)},
        {"reference_mr", set(k.reference_mr)},
        {"reference_zf", set(k.reference_zf)}}},
      {"nsga2",
       {{"pop_size", set(g.pop_size)},
        {"generations", set(g.generations)},
        {"crossover_prob", set(g.crossover_prob)},
        {"mutation_prob", set(g.mutation_prob)}}},
      {"dqn",
       {{"batch_size", set(d.batch_size)},
        {"learning_rate", set(d.learning_rate)},
        {"gamma", set(d.gamma)},
        {"epsilon", set(d.epsilon)},
        {"memory", set(d.memory)},
        {"iterations", set(d.iterations)},
        {"target_sync", set(d.target_sync)},
        {"hidden1", set(d.hidden1)},
        {"hidden2", set(d.hidden2)},
        {"r_tilde", set(d.r_tilde)},
        {"infeasible_reward", set(d.infeasible_reward)},
        {"init", set(init)}}},
  };

  for (const auto& kv : root) {
    const auto name = kv.first.as<std::string>();
    if (name == "seed") {
      c.seed = kv.second.as<std::uint64_t>();
      continue;
    }
    const auto it = sections.find(name);
    if (it == sections.end()) throw std::invalid_argument("unknown config section '" + name + "'");
    apply_section(kv.second, name, it->second);
  }

  if (rho_formula == "standard") q.formula = RhoFormula::kStandard;
  else if (rho_formula == "literal") q.formula = RhoFormula::kLiteral;
  else throw std::invalid_argument("quantizer.rho_formula must be standard|literal");
  c.rates.rho_formula = q.formula;

  if (eta_formula == "orthogonal") c.rates.eta_formula = EtaFormula::kOrthogonal;
  else if (eta_formula == "printed") c.rates.eta_formula = EtaFormula::kPrinted;
  else throw std::invalid_argument("estimation.eta_formula must be orthogonal|printed");

  k.cap_mode = moop::parse_power_cap_mode(cap_mode);

  if (init == "he") d.init = moop::InitMode::kHe;
  else if (init == "zero") d.init = moop::InitMode::kZero;
  else throw std::invalid_argument("dqn.init must be he|zero");

  for (const auto* ref : {&k.reference_mr, &k.reference_zf})
    if (!ref->empty() && ref->size() != 3)
      throw std::invalid_argument("constraint reference must list 3 group widths");
  if (q.b_max < 1) throw std::invalid_argument("quantizer.b_max must be >= 1");

  s.validate();
  p.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace nafd
