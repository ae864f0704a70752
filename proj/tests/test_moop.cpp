#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "nafd/config_io.hpp"
#include "nafd/experiments.hpp"
#include "nafd/moop/nsga2.hpp"

using namespace nafd;
using namespace nafd::moop;
using Catch::Approx;

namespace {

struct Bundle {
  Scenario sc;
  Evaluator ev;
  Bundle(const ExperimentConfig& cfg, Scheme scheme, int b_max)
      : sc(Scenario::build(cfg)),
        ev(sc.cfg.system, sc.stats, sc.cfg.power, scheme, sc.cfg.rates, b_max) {}
};

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.seed = 20;
  return c;
}

ExperimentConfig reduced_config() { return load_config(NAFD_CONFIG_DIR "/reduced.yaml"); }

std::vector<std::string> keys(const std::vector<Individual>& v) {
  std::vector<std::string> out;
  for (const auto& i : v) out.push_back(i.bits.key());
  return out;
}

// Front index of every point from pairwise domination counts.
std::vector<int> reference_ranks(const std::vector<Objectives>& objs) {
  const std::size_t n = objs.size();
  std::vector<int> rank(n, -1);
  std::vector<bool> done(n, false);
  for (int level = 0;; ++level) {
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < n && !dominated; ++j)
        if (!done[j] && j != i && dominates(objs[j], objs[i])) dominated = true;
      if (!dominated) current.push_back(i);
    }
    if (current.empty()) break;
    for (std::size_t i : current) {
      rank[i] = level;
      done[i] = true;
    }
  }
  return rank;
}

void require_mutually_non_dominated(const std::vector<Individual>& front) {
  for (std::size_t i = 0; i < front.size(); ++i)
    for (std::size_t j = 0; j < front.size(); ++j)
      if (i != j) CHECK_FALSE(dominates(front[i].obj, front[j].obj));
}

}  // namespace

TEST_CASE("dominance") {
  CHECK(dominates({2, 2}, {1, 1}));
  CHECK(dominates({2, 1}, {1, 1}));
  CHECK_FALSE(dominates({1, 1}, {1, 1}));
  CHECK_FALSE(dominates({2, 0}, {1, 1}));
}

TEST_CASE("non-dominated sort by inspection") {
  const std::vector<Objectives> objs{{1, 2}, {2, 1}, {0, 0}};
  const auto fronts = fast_non_dominated_sort(objs);
  REQUIRE(fronts.size() == 2);
  std::vector<int> first = fronts[0];
  std::sort(first.begin(), first.end());
  CHECK(first == std::vector<int>{0, 1});
  CHECK(fronts[1] == std::vector<int>{2});
}

TEST_CASE("non-dominated sort matches domination counting on random sets") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coarse(0, 9);
  std::uniform_real_distribution<double> fine(0.0, 1.0);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<Objectives> objs(100);
    for (auto& o : objs) {
      // Half the sets use a coarse grid to force ties.
      o = rep % 2 ? Objectives{double(coarse(rng)), double(coarse(rng))}
                  : Objectives{fine(rng), fine(rng)};
    }
    const auto fronts = fast_non_dominated_sort(objs);
    const std::vector<int> expect = reference_ranks(objs);
    std::vector<int> got(objs.size(), -1);
    for (std::size_t f = 0; f < fronts.size(); ++f)
      for (int i : fronts[f]) got[static_cast<std::size_t>(i)] = static_cast<int>(f);
    CHECK(got == expect);
  }
}

TEST_CASE("constrained sort puts feasible points first") {
  const std::vector<Objectives> objs{{5, 5}, {1, 1}, {3, 3}, {0, 0}};
  const std::vector<double> viol{0.5, 0.0, 0.1, 0.0};
  const auto fronts = constrained_non_dominated_sort(objs, viol);
  REQUIRE(fronts.size() == 4);
  CHECK(fronts[0] == std::vector<int>{1});
  CHECK(fronts[1] == std::vector<int>{3});
  CHECK(fronts[2] == std::vector<int>{2});
  CHECK(fronts[3] == std::vector<int>{0});
}

TEST_CASE("crowding distance") {
  const std::vector<Objectives> objs{{0, 4}, {1, 3}, {2, 1}, {4, 0}};
  const std::vector<int> front{0, 1, 2, 3};
  const auto d = crowding_distance(objs, front);
  CHECK(std::isinf(d[0]));
  CHECK(std::isinf(d[3]));
  CHECK(d[1] == Approx(2.0 / 4.0 + 3.0 / 4.0));
  CHECK(d[2] == Approx(3.0 / 4.0 + 3.0 / 4.0));
  const std::vector<int> pair{0, 3};
  for (double v : crowding_distance(objs, pair)) CHECK(std::isinf(v));
}

TEST_CASE("evaluator memoizes") {
  const Bundle b(default_config(), Scheme::kMR, 12);
  const BitAllocation x = BitAllocation::from_groups(b.sc.cfg.system, 6, 5, 7);
  const Evaluation e1 = b.ev.evaluate(x);
  const std::size_t n = b.ev.evaluations();
  const Evaluation e2 = b.ev.evaluate(x);
  CHECK(b.ev.evaluations() == n);
  CHECK(e1.obj.f1 == e2.obj.f1);
  CHECK(e1.obj.f2 == e2.obj.f2);
  CHECK(e1.total_power == e2.total_power);
  CHECK_THROWS_AS(b.ev.evaluate(BitAllocation::uniform(b.sc.cfg.system, 13)), std::invalid_argument);
}

TEST_CASE("adding a bit never lowers spectral efficiency") {
  for (Scheme s : {Scheme::kMR, Scheme::kZF}) {
    const Bundle b(default_config(), s, 12);
    const SystemConfig& cfg = b.sc.cfg.system;
    for (int base : {1, 4, 8}) {
      const BitAllocation x = BitAllocation::uniform(cfg, base);
      const double f1 = b.ev.evaluate(x).obj.f1;
      std::vector<int> flat = x.flat();
      for (std::size_t i = 0; i < flat.size(); ++i) {
        std::vector<int> up = flat;
        ++up[i];
        CHECK(b.ev.evaluate(BitAllocation::from_flat(cfg, up)).obj.f1 >= f1);
      }
    }
  }
}

TEST_CASE("five against nine bits") {
  const Bundle b(default_config(), Scheme::kMR, 12);
  const Objectives five = b.ev.evaluate(BitAllocation::uniform(b.sc.cfg.system, 5)).obj;
  const Objectives nine = b.ev.evaluate(BitAllocation::uniform(b.sc.cfg.system, 9)).obj;
  CHECK(nine.f1 > five.f1);
  CHECK(nine.f2 < five.f2);
}

TEST_CASE("constraints") {
  const Bundle b(default_config(), Scheme::kMR, 12);
  const SystemConfig& cfg = b.sc.cfg.system;
  Constraints c = default_constraints(b.ev, PowerCapMode::kOff);
  CHECK(c.b_budget == Approx(12.0 * cfg.m * cfg.n_total() + 12.0 * cfg.k_dl));

  const BitAllocation top = BitAllocation::uniform(cfg, 12);
  const Evaluation e = b.ev.evaluate(top);
  CHECK(weighted_bits(top, cfg) == c.b_budget);
  CHECK(check_feasible(top, e, c, cfg).c1);
  c.b_budget -= 1.0;
  const Feasibility over = check_feasible(top, e, c, cfg);
  CHECK_FALSE(over.c1);
  CHECK_FALSE(over.feasible);
  CHECK(over.violation > 0.0);
  CHECK(over.describe().find("C1") != std::string::npos);

  SystemConfig silent = cfg;
  silent.p_ul = silent.p_dl = 0.0;
  const Evaluator quiet(silent, b.sc.stats, b.sc.cfg.power, Scheme::kMR, {}, 12);
  const Constraints floors = default_constraints(quiet, PowerCapMode::kOff);
  const Feasibility f = check_feasible(top, quiet.evaluate(top), floors, silent);
  CHECK_FALSE(f.c2);
  CHECK_FALSE(f.c3);
}

TEST_CASE("power cap modes") {
  const Bundle b(default_config(), Scheme::kMR, 12);
  const SystemConfig& cfg = b.sc.cfg.system;
  const Constraints upper = default_constraints(b.ev, PowerCapMode::kUpper);
  const BitAllocation ref = reference_allocation(cfg, Scheme::kMR);
  CHECK(ref.key() == "7 7 7;5 5 5;6 6 6");
  CHECK(reference_allocation(cfg, Scheme::kZF).key() == "8 8 8;1 1 1;7 7 7");
  CHECK(upper.p_cap == Approx(b.ev.evaluate(ref).total_power));

  const BitAllocation hungry = BitAllocation::uniform(cfg, 11);
  const BitAllocation lean = BitAllocation::uniform(cfg, 3);
  CHECK_FALSE(check_feasible(hungry, b.ev.evaluate(hungry), upper, cfg).c4);
  CHECK(check_feasible(lean, b.ev.evaluate(lean), upper, cfg).c4);

  Constraints lower = upper;
  lower.cap_mode = PowerCapMode::kLower;
  CHECK(check_feasible(hungry, b.ev.evaluate(hungry), lower, cfg).c4);
  CHECK_FALSE(check_feasible(lean, b.ev.evaluate(lean), lower, cfg).c4);

  CHECK(parse_power_cap_mode("off") == PowerCapMode::kOff);
  CHECK(to_string(PowerCapMode::kLower) == "lower");
  CHECK_THROWS_AS(parse_power_cap_mode("sideways"), std::invalid_argument);
}

TEST_CASE("exhaustive front on the reduced scenario") {
  const ExperimentConfig cfg = reduced_config();
  for (Scheme s : {Scheme::kMR, Scheme::kZF}) {
    const Bundle b(cfg, s, cfg.quant.b_max);
    const Constraints cons = make_constraints(b.ev, cfg.constraints);
    const auto bf = brute_force_front(b.ev, cons);
    CHECK(b.ev.evaluations() == 64);
    REQUIRE_FALSE(bf.empty());
    require_mutually_non_dominated(bf);
    for (const auto& i : bf) CHECK(i.feas.feasible);
    // Every feasible allocation is weakly dominated by the front.
    for (int x = 1; x <= 4; ++x)
      for (int y = 1; y <= 4; ++y)
        for (int z = 1; z <= 4; ++z) {
          const BitAllocation a = BitAllocation::from_groups(b.sc.cfg.system, x, y, z);
          const Evaluation e = b.ev.evaluate(a);
          if (!check_feasible(a, e, cons, b.sc.cfg.system).feasible) continue;
          bool covered = false;
          for (const auto& f : bf)
            covered = covered || dominates(f.obj, e.obj) ||
                      (f.obj.f1 == e.obj.f1 && f.obj.f2 == e.obj.f2);
          CHECK(covered);
        }
  }
}

TEST_CASE("NSGA-II reproduces the exhaustive front") {
  ExperimentConfig base = reduced_config();
  for (int b_max : {4, 6, 8}) {
    for (PowerCapMode mode : {PowerCapMode::kUpper, PowerCapMode::kOff}) {
      ExperimentConfig cfg = base;
      cfg.quant.b_max = b_max;
      cfg.constraints.cap_mode = mode;
      for (Scheme s : {Scheme::kMR, Scheme::kZF}) {
        const Bundle b(cfg, s, b_max);
        const Constraints cons = make_constraints(b.ev, cfg.constraints);
        const auto bf = brute_force_front(b.ev, cons);
        const Nsga2Result r = nsga2_run(b.ev, cons, cfg.nsga2);
        INFO("b_max " << b_max << " cap " << to_string(mode) << " scheme " << to_string(s));
        CHECK(keys(r.front) == keys(bf));
      }
    }
  }
}

TEST_CASE("NSGA-II front on the full scenario") {
  const ExperimentConfig cfg = load_config(NAFD_CONFIG_DIR "/default.yaml");
  for (Scheme s : {Scheme::kMR, Scheme::kZF}) {
    const Bundle b(cfg, s, cfg.quant.b_max);
    const Constraints cons = make_constraints(b.ev, cfg.constraints);
    Nsga2Config nc = cfg.nsga2;
    nc.generations = 100;
    const Nsga2Result r = nsga2_run(b.ev, cons, nc);
    REQUIRE_FALSE(r.front.empty());
    require_mutually_non_dominated(r.front);
    for (const auto& i : r.front) {
      CHECK(i.feas.feasible);
      const Evaluation e = b.ev.evaluate(i.bits);
      CHECK(i.obj.f1 == e.obj.f1);
      CHECK(i.obj.f2 == e.obj.f2);
    }
    const Nsga2Result again = nsga2_run(b.ev, cons, nc);
    CHECK(keys(again.front) == keys(r.front));
  }
}

TEST_CASE("NSGA-II reports an empty feasible set") {
  ExperimentConfig cfg = reduced_config();
  cfg.constraints.r_dl_min = 1e6;
  const Bundle b(cfg, Scheme::kMR, cfg.quant.b_max);
  const Constraints cons = make_constraints(b.ev, cfg.constraints);
  const Nsga2Result r = nsga2_run(b.ev, cons, cfg.nsga2);
  CHECK(r.front.empty());
  CHECK_FALSE(r.diagnostic.empty());
  CHECK(brute_force_front(b.ev, cons).empty());
}
