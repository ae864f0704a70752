#include "nafd/experiments.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nafd {

Scenario Scenario::build(const ExperimentConfig& cfg) {
  Scenario sc;
  sc.cfg = cfg;
  sc.cfg.system.validate();
  sc.geometry = sample_geometry(sc.cfg.system, cfg.seed);
  sc.stats = large_scale_fading(sc.geometry, sc.cfg.system);
  return sc;
}

BitAllocation reference_for(const Scenario& sc, Scheme scheme) {
  const auto& ref = scheme == Scheme::kMR ? sc.cfg.constraints.reference_mr
                                          : sc.cfg.constraints.reference_zf;
  const int b_max = sc.cfg.quant.b_max;
  BitAllocation b = ref.empty() ? moop::reference_allocation(sc.cfg.system, scheme)
                                : BitAllocation::from_groups(sc.cfg.system, ref[0], ref[1], ref[2]);
  for (auto* group : {&b.ul_rau_bits, &b.dl_rau_bits, &b.dl_user_bits})
    for (int& x : *group) x = std::clamp(x, 1, b_max);
  return b;
}

moop::Constraints make_constraints(const moop::Evaluator& ev, const ConstraintSettings& s) {
  moop::Constraints c;
  c.b_budget = s.b_budget > 0.0 ? s.b_budget : moop::default_bit_budget(ev.config(), 12);
  c.r_ul_min = s.r_ul_min;
  c.r_dl_min = s.r_dl_min;
  c.cap_mode = s.cap_mode;
  const auto& ref = ev.scheme() == Scheme::kMR ? s.reference_mr : s.reference_zf;
  BitAllocation b = ref.empty() ? moop::reference_allocation(ev.config(), ev.scheme())
                                : BitAllocation::from_groups(ev.config(), ref[0], ref[1], ref[2]);
  for (auto* group : {&b.ul_rau_bits, &b.dl_rau_bits, &b.dl_user_bits})
    for (int& x : *group) x = std::clamp(x, 1, ev.b_max());
  c.p_cap = ev.evaluate(b).total_power;
  return c;
}

namespace {

void check_bit_range(int lo, int hi, int b_max) {
  if (lo < 1 || hi < lo || hi > b_max)
    throw std::invalid_argument("bit range must satisfy 1 <= min <= max <= b_max (" +
                                std::to_string(b_max) + ")");
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

std::string str(std::string_view s) { return std::string(s); }

}  // namespace

ValidateResult run_validate(const Scenario& sc, const ValidateOptions& opt) {
  check_bit_range(opt.bits_min, opt.bits_max, sc.cfg.quant.b_max);
  if (opt.tol < 0.0) throw std::invalid_argument("tolerance must be >= 0");
  if (opt.csi.empty() && opt.ic.empty())
    throw std::invalid_argument("validate needs at least one CSI or IC mode");
  McConfig mc = sc.cfg.mc;
  mc.seed = sc.cfg.seed;
  if (opt.trials > 0) mc.trials = opt.trials;

  ValidateResult res;
  res.table.header = {"scheme", "csi_mode", "ic_mode", "bits", "user",
                      "closed_form", "mc_mean", "mc_halfwidth", "rel_err"};
  const SystemConfig& cfg = sc.cfg.system;
  const std::size_t runs = std::max(opt.csi.size(), opt.ic.size());

  for (Scheme scheme : opt.schemes) {
    for (int b = opt.bits_min; b <= opt.bits_max; ++b) {
      const BitAllocation bits = BitAllocation::uniform(cfg, b);
      for (std::size_t r = 0; r < runs; ++r) {
        const bool emit_dl = r < opt.csi.size();
        const bool emit_ul = r < opt.ic.size();
        const CsiMode csi = opt.csi.empty() ? CsiMode::kEstimated : opt.csi[std::min(r, opt.csi.size() - 1)];
        const IcMode ic = opt.ic.empty() ? IcMode::kWith : opt.ic[std::min(r, opt.ic.size() - 1)];
        const McRates sim = simulate_rates(cfg, sc.stats, scheme, bits, csi, ic, mc, sc.cfg.rates);
        const RateReport cf = closed_form_rates(sc.stats, cfg, scheme, bits, csi, ic, sc.cfg.rates);

        auto emit = [&](const std::string& csi_s, const std::string& ic_s, const std::string& user,
                        double closed, const McResult& m, bool decides) {
          const Comparison c = compare_closed_form(closed, m, opt.tol);
          res.table.add({str(to_string(scheme)), csi_s, ic_s, std::int64_t{b}, user, closed, m.mean,
                         m.half_width, c.rel_err});
          if (decides) {
            ++res.points;
            if (!c.pass) ++res.failed;
          }
        };
        if (emit_dl) {
          for (int k = 0; k < cfg.k_dl; ++k)
            emit(str(to_string(csi)), "na", "dl:" + std::to_string(k), cf.r_dl[k], sim.dl[k], false);
          emit(str(to_string(csi)), "na", "dl:avg", mean_of(cf.r_dl), sim.dl_avg, true);
        }
        if (emit_ul) {
          for (int k = 0; k < cfg.k_ul; ++k)
            emit("na", str(to_string(ic)), "ul:" + std::to_string(k), cf.r_ul[k], sim.ul[k], false);
          emit("na", str(to_string(ic)), "ul:avg", mean_of(cf.r_ul), sim.ul_avg, true);
        }
      }
    }
  }
  return res;
}

Table run_sweep_bits(const Scenario& sc, const SweepOptions& opt) {
  check_bit_range(opt.bits_min, opt.bits_max, sc.cfg.quant.b_max);
  Table t;
  t.header = {"scheme", "csi_mode", "ic_mode", "bits", "avg_dl",
              "avg_ul", "sum_se", "ee", "total_power_w"};
  const SystemConfig& cfg = sc.cfg.system;
  for (Scheme scheme : opt.schemes)
    for (CsiMode csi : opt.csi)
      for (IcMode ic : opt.ic)
        for (int b = opt.bits_min; b <= opt.bits_max; ++b) {
          const BitAllocation bits = BitAllocation::uniform(cfg, b);
          const RateReport r = closed_form_rates(sc.stats, cfg, scheme, bits, csi, ic, sc.cfg.rates);
          const double ptot = total_power(r.raw_sum(), bits, cfg, sc.cfg.power, scheme);
          t.add({str(to_string(scheme)), str(to_string(csi)), str(to_string(ic)), std::int64_t{b},
                 mean_of(r.r_dl), mean_of(r.r_ul), r.sum_se,
                 energy_efficiency(r, bits, cfg, sc.cfg.power, scheme), ptot});
        }
  return t;
}

Table run_tradeoff(const Scenario& sc, const TradeoffOptions& opt) {
  check_bit_range(opt.bits_min, opt.bits_max, sc.cfg.quant.b_max);
  if (opt.m_min < 1 || opt.m_max < opt.m_min || opt.m_step < 1)
    throw std::invalid_argument("antenna range must satisfy 1 <= min <= max and step >= 1");
  Table t;
  t.header = {"m", "bits", "f1_se", "f2_ee"};
  for (int m = opt.m_min; m <= opt.m_max; m += opt.m_step) {
    SystemConfig cfg = sc.cfg.system;
    cfg.m = m;
    const moop::Evaluator ev(cfg, sc.stats, sc.cfg.power, opt.scheme, sc.cfg.rates,
                             sc.cfg.quant.b_max);
    for (int b = opt.bits_min; b <= opt.bits_max; ++b) {
      const moop::Evaluation e = ev.evaluate(BitAllocation::uniform(cfg, b));
      t.add({std::int64_t{m}, std::int64_t{b}, e.obj.f1, e.obj.f2});
    }
  }
  return t;
}

Method parse_method(std::string_view s) {
  if (s == "nsga2") return Method::kNsga2;
  if (s == "dqn") return Method::kDqn;
  throw std::invalid_argument("unknown method '" + std::string(s) + "' (expected nsga2|dqn)");
}

namespace {

void add_individual(Table& t, const moop::Individual& ind) {
  t.add({ind.obj.f1, ind.obj.f2, std::int64_t{ind.feas.feasible ? 1 : 0}, ind.bits.group_string(0),
         ind.bits.group_string(1), ind.bits.group_string(2)});
}

}  // namespace

OptimizeResult run_optimize(const Scenario& sc, const OptimizeOptions& opt) {
  const moop::Evaluator ev(sc.cfg.system, sc.stats, sc.cfg.power, opt.scheme, sc.cfg.rates,
                           sc.cfg.quant.b_max);
  const moop::Constraints cons = make_constraints(ev, sc.cfg.constraints);

  OptimizeResult res;
  res.front.header = {"f1_se", "f2_ee", "feasible", "bits_ul_raus", "bits_dl_raus", "bits_dl_users"};
  res.trace.header = {"iter", "reward", "loss", "epsilon", "best_reward_so_far"};
  res.summary.header = {"key", "value"};
  auto note = [&](const std::string& k, Cell v) { res.summary.add({k, std::move(v)}); };

  note("method", std::string(opt.method == Method::kNsga2 ? "nsga2" : "dqn"));
  note("scheme", str(to_string(opt.scheme)));
  note("seed", static_cast<std::int64_t>(sc.cfg.seed));
  note("b_max", std::int64_t{ev.b_max()});
  note("b_budget", cons.b_budget);
  note("r_ul_min", cons.r_ul_min);
  note("r_dl_min", cons.r_dl_min);
  note("power_cap_mode", moop::to_string(cons.cap_mode));
  note("power_cap_w", cons.p_cap);
  note("power_cap_reference", reference_for(sc, opt.scheme).key());

  if (opt.method == Method::kNsga2) {
    moop::Nsga2Config nc = sc.cfg.nsga2;
    nc.seed = sc.cfg.seed;
    const moop::Nsga2Result r = moop::nsga2_run(ev, cons, nc);
    for (const auto& ind : r.front) add_individual(res.front, ind);
    note("pop_size", std::int64_t{nc.pop_size});
    note("generations", std::int64_t{nc.generations});
    note("front_size", static_cast<std::int64_t>(r.front.size()));
    note("evaluations", static_cast<std::int64_t>(r.evaluations));
    if (!r.diagnostic.empty()) note("diagnostic", r.diagnostic);
  } else {
    moop::DqnConfig dc = sc.cfg.dqn;
    dc.seed = sc.cfg.seed;
    const moop::DqnResult r = moop::dqn_run(ev, cons, dc);
    add_individual(res.front, r.best);
    for (const auto& row : r.trace)
      res.trace.add({std::int64_t{row.iter}, row.reward, row.loss, row.epsilon,
                     row.best_reward_so_far});
    note("iterations", std::int64_t{dc.iterations});
    note("best_reward", r.best_reward);
    note("found_feasible", std::int64_t{r.found_feasible ? 1 : 0});
    if (!r.found_feasible) note("diagnostic", "no feasible state visited; " + r.best.feas.describe());
  }
  return res;
}

}  // namespace nafd
