#include "nafd/moop/dqn.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace nafd::moop {

ReplayMemory::ReplayMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("replay memory capacity must be >= 1");
}

void ReplayMemory::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
  } else {
    items_[next_] = std::move(t);
    next_ = (next_ + 1) % capacity_;
  }
}

std::vector<Transition> ReplayMemory::sample(std::size_t n, Rng& rng) const {
  if (items_.empty()) throw std::invalid_argument("cannot sample an empty replay memory");
  std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
  std::vector<Transition> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(items_[pick(rng)]);
  return out;
}

RewardModel::RewardModel(const Evaluator& ev, double r_tilde) : r_tilde_(r_tilde) {
  const SystemConfig& cfg = ev.config();
  const Objectives lo = ev.evaluate(BitAllocation::uniform(cfg, 1)).obj;
  const Objectives hi = ev.evaluate(BitAllocation::uniform(cfg, ev.b_max())).obj;
  f1_min_ = std::min(lo.f1, hi.f1);
  f1_max_ = std::max(lo.f1, hi.f1);
  f2_min_ = std::min(lo.f2, hi.f2);
  f2_max_ = std::max(lo.f2, hi.f2);
}

double RewardModel::reward(const Objectives& o) const {
  auto norm = [](double v, double lo, double hi) { return hi > lo ? (v - lo) / (hi - lo) : 0.0; };
  return norm(o.f1, f1_min_, f1_max_) + norm(o.f2, f2_min_, f2_max_) - r_tilde_;
}

BitAllocation apply_action(const BitAllocation& bits, int action, const SystemConfig& cfg,
                           int b_max) {
  std::vector<int> g = bits.flat();
  if (action < 0 || action >= 2 * static_cast<int>(g.size()))
    throw std::invalid_argument("action out of range");
  int& x = g[static_cast<std::size_t>(action / 2)];
  x = std::clamp(x + (action % 2 == 1 ? 1 : -1), 1, b_max);
  return BitAllocation::from_flat(cfg, g);
}

namespace {

Eigen::VectorXd encode(const BitAllocation& bits, int b_max) {
  const std::vector<int> g = bits.flat();
  Eigen::VectorXd s(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) s[static_cast<Eigen::Index>(i)] = double(g[i]) / b_max;
  return s;
}

}  // namespace

DqnResult dqn_run(const Evaluator& ev, const Constraints& cons, const DqnConfig& cfg) {
  if (cfg.batch_size < 1 || cfg.memory < 1 || cfg.iterations < 0 || cfg.target_sync < 1)
    throw std::invalid_argument("invalid DQN configuration");
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in [0, 1]");

  const SystemConfig& sc = ev.config();
  const int b_max = ev.b_max();
  const int genes = sc.n_total() + sc.k_dl;
  const int actions = 2 * genes;
  const RewardModel model(ev, cfg.r_tilde);

  Rng rng = make_rng(cfg.seed, 0, Stream::kSolver);
  QNetwork net(genes, cfg.hidden1, cfg.hidden2, actions, cfg.init, rng);
  QNetwork target = net;
  ReplayMemory memory(static_cast<std::size_t>(cfg.memory));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> random_action(0, actions - 1);

  auto score = [&](const BitAllocation& b, Individual& ind) {
    const Evaluation e = ev.evaluate(b);
    ind.bits = b;
    ind.obj = e.obj;
    ind.feas = check_feasible(b, e, cons, sc);
    return ind.feas.feasible ? model.reward(e.obj) : cfg.infeasible_reward;
  };

  BitAllocation state;
  if (cfg.initial) {
    state = *cfg.initial;
  } else {
    state = reference_allocation(sc, ev.scheme());
    for (auto* group : {&state.ul_rau_bits, &state.dl_rau_bits, &state.dl_user_bits})
      for (int& b : *group) b = std::min(b, b_max);
  }
  state.validate(sc, b_max);

  DqnResult res;
  Individual current;
  const double r0 = score(state, current);
  res.best = current;
  res.found_feasible = current.feas.feasible;
  res.best_reward = current.feas.feasible ? r0 : -std::numeric_limits<double>::infinity();

  int steps = 0;
  for (int t = 1; t <= cfg.iterations; ++t) {
    const Eigen::VectorXd s = encode(state, b_max);
    int a = 0;
    if (unit(rng) < cfg.epsilon) {
      a = random_action(rng);
    } else {
      net.forward(s).maxCoeff(&a);
    }
    const BitAllocation next = apply_action(state, a, sc, b_max);
    Individual ind;
    const double r = score(next, ind);
    // Moves into infeasible states are penalized and blocked once the chain is feasible.
    const bool moved = ind.feas.feasible || !current.feas.feasible;
    memory.push({s, a, r, moved ? encode(next, b_max) : s});

    double loss = 0.0;
    if (memory.size() >= static_cast<std::size_t>(cfg.batch_size)) {
      loss = gradient_step(net, memory.sample(static_cast<std::size_t>(cfg.batch_size), rng),
                           target, cfg.learning_rate, cfg.gamma);
      if (++steps % cfg.target_sync == 0) target = net;
    }
    if (ind.feas.feasible && r > res.best_reward) {
      res.best = ind;
      res.best_reward = r;
      res.found_feasible = true;
    }
    res.trace.push_back({t, r, loss, cfg.epsilon,
                         res.found_feasible ? res.best_reward : cfg.infeasible_reward});
    if (moved) {
      state = next;
      current = ind;
    }
  }
  if (!res.found_feasible) res.best_reward = cfg.infeasible_reward;
  return res;
}

}  // namespace nafd::moop
