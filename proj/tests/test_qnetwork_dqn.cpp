#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "nafd/config_io.hpp"
#include "nafd/experiments.hpp"
#include "nafd/moop/dqn.hpp"

using namespace nafd;
using namespace nafd::moop;
using Catch::Approx;

namespace {

Transition random_transition(int in, int out, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Transition t;
  t.s = Eigen::VectorXd::NullaryExpr(in, [&] { return u(rng); });
  t.s_next = Eigen::VectorXd::NullaryExpr(in, [&] { return u(rng); });
  t.a = static_cast<int>(u(rng) * out) % out;
  t.r = 2.0 * u(rng) - 1.0;
  return t;
}

struct Reduced {
  ExperimentConfig cfg = load_config(NAFD_CONFIG_DIR "/reduced.yaml");
  Scenario sc = Scenario::build(cfg);
  Evaluator ev{sc.cfg.system, sc.stats, sc.cfg.power, Scheme::kMR, sc.cfg.rates, cfg.quant.b_max};
  Constraints cons = make_constraints(ev, cfg.constraints);
};

}  // namespace

TEST_CASE("network shape") {
  Rng rng(1);
  const QNetwork net(9, 64, 64, 18, InitMode::kHe, rng);
  CHECK(net.input_size() == 9);
  CHECK(net.output_size() == 18);
  CHECK(net.parameter_count() == 9 * 64 + 64 + 64 * 64 + 64 + 64 * 18 + 18);
  const Eigen::VectorXd q = net.forward(Eigen::VectorXd::Constant(9, 0.5));
  CHECK(q.size() == 18);
  CHECK(q.allFinite());
  CHECK_THROWS_AS(net.forward(Eigen::VectorXd::Zero(8)), std::invalid_argument);

  QNetwork copy = net;
  const Eigen::VectorXd p = net.parameters();
  copy.set_parameters(p);
  CHECK(copy.parameters() == p);
  CHECK(copy.parameter_count() == net.parameter_count());
  CHECK_THROWS_AS(copy.set_parameters(Eigen::VectorXd::Zero(3)), std::invalid_argument);

  const QNetwork zero(9, 4, 4, 18, InitMode::kZero, rng);
  CHECK(zero.forward(Eigen::VectorXd::Ones(9)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("targets use the target network maximum") {
  Rng rng(2);
  const QNetwork target(3, 8, 8, 4, InitMode::kHe, rng);
  const Transition t = random_transition(3, 4, rng);
  const std::vector<double> y = td_targets(target, {t}, 0.9);
  CHECK(y[0] == Approx(t.r + 0.9 * target.forward(t.s_next).maxCoeff()));
}

TEST_CASE("analytic gradient matches central differences") {
  Rng rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    QNetwork net(5, 7, 6, 4, InitMode::kHe, rng);
    const std::vector<Transition> batch{random_transition(5, 4, rng)};
    const std::vector<double> y{1.3};
    const Eigen::VectorXd g = net.gradient(batch, y);
    const Eigen::VectorXd p = net.parameters();
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      Eigen::VectorXd up = p, down = p;
      up[i] += h;
      down[i] -= h;
      net.set_parameters(up);
      const double lu = net.loss(batch, y);
      net.set_parameters(down);
      const double ld = net.loss(batch, y);
      net.set_parameters(p);
      const double fd = (lu - ld) / (2.0 * h);
      const double scale = std::max({std::abs(fd), std::abs(g[i]), 1e-3});
      INFO("parameter " << i << " analytic " << g[i] << " numeric " << fd);
      CHECK(std::abs(fd - g[i]) / scale < 1e-5);
    }
  }
}

TEST_CASE("a batch that already fits its targets is left alone") {
  Rng rng(4);
  QNetwork net(4, 6, 6, 3, InitMode::kHe, rng);
  const QNetwork target(4, 6, 6, 3, InitMode::kHe, rng);
  std::vector<Transition> batch;
  for (int i = 0; i < 5; ++i) {
    Transition t = random_transition(4, 3, rng);
    t.r = net.forward(t.s)[t.a] - 0.9 * target.forward(t.s_next).maxCoeff();
    batch.push_back(t);
  }
  const Eigen::VectorXd before = net.parameters();
  const double loss = gradient_step(net, batch, target, 0.1, 0.9);
  CHECK(loss == Approx(0.0).margin(1e-24));
  CHECK((net.parameters() - before).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("small steps on a fixed batch never raise the loss") {
  Rng rng(5);
  QNetwork net(9, 16, 16, 18, InitMode::kHe, rng);
  const QNetwork target(9, 16, 16, 18, InitMode::kHe, rng);
  std::vector<Transition> batch;
  for (int i = 0; i < 32; ++i) batch.push_back(random_transition(9, 18, rng));
  double prev = gradient_step(net, batch, target, 1e-4, 0.9);
  for (int step = 0; step < 200; ++step) {
    const double loss = gradient_step(net, batch, target, 1e-4, 0.9);
    CHECK(loss <= prev + 1e-15);
    prev = loss;
  }
}

TEST_CASE("replay memory") {
  ReplayMemory mem(3);
  CHECK(mem.capacity() == 3);
  Rng rng(6);
  CHECK_THROWS_AS(mem.sample(1, rng), std::invalid_argument);
  for (int i = 0; i < 5; ++i) mem.push({Eigen::VectorXd::Zero(1), i, double(i), Eigen::VectorXd::Zero(1)});
  CHECK(mem.size() == 3);
  std::vector<int> seen(5, 0);
  const auto s = mem.sample(30'000, rng);
  for (const auto& t : s) ++seen[static_cast<std::size_t>(t.a)];
  // The two oldest transitions were overwritten.
  CHECK(seen[0] == 0);
  CHECK(seen[1] == 0);
  for (int i = 2; i < 5; ++i) CHECK(seen[i] == Approx(10'000).epsilon(0.05));
  CHECK_THROWS_AS(ReplayMemory(0), std::invalid_argument);
}

TEST_CASE("reward normalization") {
  const Reduced r;
  const RewardModel m(r.ev, 1.0);
  CHECK(m.reward({m.f1_max(), m.f2_max()}) == Approx(1.0));
  CHECK(m.reward({m.f1_min(), m.f2_min()}) == Approx(-1.0));
  const RewardModel shifted(r.ev, 0.5);
  CHECK(shifted.reward({m.f1_max(), m.f2_max()}) == Approx(1.5));
}

TEST_CASE("actions change one group by one bit") {
  SystemConfig cfg;
  const BitAllocation x = BitAllocation::from_groups(cfg, 1, 5, 12);
  CHECK(apply_action(x, 1, cfg, 12).ul_rau_bits[0] == 2);
  CHECK(apply_action(x, 0, cfg, 12).ul_rau_bits[0] == 1);
  CHECK(apply_action(x, 6, cfg, 12).dl_rau_bits[0] == 4);
  CHECK(apply_action(x, 17, cfg, 12).dl_user_bits[2] == 12);
  const BitAllocation y = apply_action(x, 16, cfg, 12);
  CHECK(y.dl_user_bits[2] == 11);
  CHECK(y.dl_user_bits[1] == 12);
  CHECK_THROWS_AS(apply_action(x, 18, cfg, 12), std::invalid_argument);
}

TEST_CASE("zero iterations returns the starting allocation") {
  const Reduced r;
  DqnConfig c = r.cfg.dqn;
  c.iterations = 0;
  const DqnResult res = dqn_run(r.ev, r.cons, c);
  CHECK(res.trace.empty());
  CHECK(res.best.bits == BitAllocation::uniform(r.sc.cfg.system, 4));
}

TEST_CASE("greedy runs from a zero network are reproducible") {
  const Reduced r;
  DqnConfig c = r.cfg.dqn;
  c.epsilon = 0.0;
  c.init = InitMode::kZero;
  c.iterations = 150;
  const DqnResult a = dqn_run(r.ev, r.cons, c);
  const DqnResult b = dqn_run(r.ev, r.cons, c);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].reward == b.trace[i].reward);
    CHECK(a.trace[i].loss == b.trace[i].loss);
  }
  CHECK(a.best.bits == b.best.bits);
}

TEST_CASE("DQN lands on the exhaustive front of the reduced scenario") {
  const Reduced base;
  for (int b_max : {4, 8}) {
    ExperimentConfig cfg = base.cfg;
    cfg.quant.b_max = b_max;
    cfg.constraints.cap_mode = b_max == 4 ? PowerCapMode::kUpper : PowerCapMode::kOff;
    const Scenario sc = Scenario::build(cfg);
    for (Scheme s : {Scheme::kMR, Scheme::kZF}) {
      const Evaluator ev(sc.cfg.system, sc.stats, sc.cfg.power, s, sc.cfg.rates, b_max);
      const Constraints cons = make_constraints(ev, cfg.constraints);
      const auto front = brute_force_front(ev, cons);
      const DqnResult d = dqn_run(ev, cons, cfg.dqn);
      INFO("b_max " << b_max << " scheme " << to_string(s) << " best " << d.best.bits.key());
      REQUIRE(d.found_feasible);
      CHECK(d.best.feas.feasible);
      bool near = false;
      for (const auto& f : front)
        near = near || (std::abs(f.obj.f1 / d.best.obj.f1 - 1.0) <= 0.02 &&
                        std::abs(f.obj.f2 / d.best.obj.f2 - 1.0) <= 0.02);
      CHECK(near);
      CHECK(d.trace.size() == static_cast<std::size_t>(cfg.dqn.iterations));
      CHECK(d.trace.back().best_reward_so_far == Approx(d.best_reward));
    }
  }
}

TEST_CASE("DQN rejects bad settings") {
  const Reduced r;
  DqnConfig c = r.cfg.dqn;
  c.epsilon = 1.5;
  CHECK_THROWS_AS(dqn_run(r.ev, r.cons, c), std::invalid_argument);
  c = r.cfg.dqn;
  c.batch_size = 0;
  CHECK_THROWS_AS(dqn_run(r.ev, r.cons, c), std::invalid_argument);
}
