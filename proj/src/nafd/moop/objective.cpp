#include "nafd/moop/objective.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nafd::moop {

bool dominates(const Objectives& a, const Objectives& b) {
  return a.f1 >= b.f1 && a.f2 >= b.f2 && (a.f1 > b.f1 || a.f2 > b.f2);
}

PowerCapMode parse_power_cap_mode(const std::string& s) {
  if (s == "upper") return PowerCapMode::kUpper;
  if (s == "lower") return PowerCapMode::kLower;
  if (s == "off") return PowerCapMode::kOff;
  throw std::invalid_argument("unknown power cap mode '" + s + "' (expected upper|lower|off)");
}

std::string to_string(PowerCapMode m) {
  switch (m) {
    case PowerCapMode::kUpper: return "upper";
    case PowerCapMode::kLower: return "lower";
    case PowerCapMode::kOff: return "off";
  }
  return "upper";
}

std::string Feasibility::describe() const {
  if (feasible) return "feasible";
  std::ostringstream os;
  os << "violated:";
  if (!c1) os << " C1(bit budget)";
  if (!c2) os << " C2(UL rate)";
  if (!c3) os << " C3(DL rate)";
  if (!c4) os << " C4(power cap)";
  return os.str();
}

BitAllocation reference_allocation(const SystemConfig& cfg, Scheme scheme) {
  return scheme == Scheme::kMR ? BitAllocation::from_groups(cfg, 7, 5, 6)
                               : BitAllocation::from_groups(cfg, 8, 1, 7);
}

double default_bit_budget(const SystemConfig& cfg, int b_max) {
  return static_cast<double>(b_max) * (cfg.m * cfg.n_total() + cfg.k_dl);
}

double weighted_bits(const BitAllocation& bits, const SystemConfig& cfg) {
  double s = 0.0;
  for (int b : bits.ul_rau_bits) s += cfg.m * b;
  for (int b : bits.dl_rau_bits) s += cfg.m * b;
  for (int b : bits.dl_user_bits) s += b;
  return s;
}

Evaluator::Evaluator(SystemConfig cfg, ChannelStats stats, PowerParams power, Scheme scheme,
                     RateOptions opts, int b_max)
    : cfg_(std::move(cfg)),
      stats_(std::move(stats)),
      power_(power),
      scheme_(scheme),
      opts_(opts),
      b_max_(b_max) {
  cfg_.validate();
  power_.validate();
  check_scheme_dimensions(cfg_, scheme_);
  if (b_max_ < 1) throw std::invalid_argument("b_max must be >= 1");
}

Evaluation Evaluator::evaluate(const BitAllocation& bits) const {
  const std::vector<int> key = bits.flat();
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  bits.validate(cfg_, b_max_);
  Evaluation e;
  e.rates = closed_form_rates(stats_, cfg_, scheme_, bits, CsiMode::kEstimated, IcMode::kWith,
                              opts_);
  e.total_power = total_power(e.rates.raw_sum(), bits, cfg_, power_, scheme_);
  e.obj.f1 = e.rates.sum_se;
  e.obj.f2 = energy_efficiency(e.rates, bits, cfg_, power_, scheme_);
  std::lock_guard lock(mu_);
  return cache_.emplace(key, std::move(e)).first->second;
}

std::size_t Evaluator::evaluations() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

Constraints default_constraints(const Evaluator& ev, PowerCapMode mode) {
  Constraints c;
  c.b_budget = default_bit_budget(ev.config(), 12);
  c.cap_mode = mode;
  BitAllocation ref = reference_allocation(ev.config(), ev.scheme());
  for (auto* group : {&ref.ul_rau_bits, &ref.dl_rau_bits, &ref.dl_user_bits})
    for (int& b : *group) b = std::min(b, ev.b_max());
  c.p_cap = ev.evaluate(ref).total_power;
  return c;
}

Feasibility check_feasible(const BitAllocation& bits, const Evaluation& ev,
                           const Constraints& cons, const SystemConfig& cfg) {
  Feasibility f;
  const double used = weighted_bits(bits, cfg);
  if (used > cons.b_budget) {
    f.c1 = false;
    f.violation += (used - cons.b_budget) / std::max(cons.b_budget, 1.0);
  }
  for (double r : ev.rates.r_ul) {
    if (r < cons.r_ul_min) {
      f.c2 = false;
      f.violation += (cons.r_ul_min - r) / std::max(cons.r_ul_min, 1e-12);
    }
  }
  for (double r : ev.rates.r_dl) {
    if (r < cons.r_dl_min) {
      f.c3 = false;
      f.violation += (cons.r_dl_min - r) / std::max(cons.r_dl_min, 1e-12);
    }
  }
  const double scale = std::max(cons.p_cap, 1e-12);
  if (cons.cap_mode == PowerCapMode::kUpper && ev.total_power > cons.p_cap) {
    f.c4 = false;
    f.violation += (ev.total_power - cons.p_cap) / scale;
  } else if (cons.cap_mode == PowerCapMode::kLower && ev.total_power < cons.p_cap) {
    f.c4 = false;
    f.violation += (cons.p_cap - ev.total_power) / scale;
  }
  f.feasible = f.c1 && f.c2 && f.c3 && f.c4;
  return f;
}

}  // namespace nafd::moop
