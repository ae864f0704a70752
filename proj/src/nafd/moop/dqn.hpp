#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nafd/moop/nsga2.hpp"
#include "nafd/moop/qnetwork.hpp"

namespace nafd::moop {

struct DqnConfig {
  int batch_size = 32;
  double learning_rate = 0.01;
  double gamma = 0.9;
  /// Probability of taking a uniformly random action.
  double epsilon = 0.9;
  int memory = 2000;
  int iterations = 1000;
  int target_sync = 50;
  int hidden1 = 64;
  int hidden2 = 64;
  double r_tilde = 1.0;
  double infeasible_reward = -2.0;
  InitMode init = InitMode::kHe;
  std::uint64_t seed = 1;
  /// Starting allocation; defaults to the scheme's reference allocation.
  std::optional<BitAllocation> initial;
};

/// Bounded FIFO of transitions with uniform sampling.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity);
  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::vector<Transition> sample(std::size_t n, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> items_;
};

struct DqnTraceRow {
  int iter = 0;
  double reward = 0.0;
  double loss = 0.0;
  double epsilon = 0.0;
  double best_reward_so_far = 0.0;
};

/// Normalized reward with the all-ones and all-b_max allocations as anchors.
class RewardModel {
 public:
  RewardModel(const Evaluator& ev, double r_tilde);
  double reward(const Objectives& o) const;
  double f1_min() const { return f1_min_; }
  double f1_max() const { return f1_max_; }
  double f2_min() const { return f2_min_; }
  double f2_max() const { return f2_max_; }

 private:
  double r_tilde_;
  double f1_min_, f1_max_, f2_min_, f2_max_;
};

struct DqnResult {
  Individual best;
  bool found_feasible = false;
  double best_reward = 0.0;
  std::vector<DqnTraceRow> trace;
};

/// Action a in [0, 2G): group a / 2, +1 bit for odd a and -1 bit for even a.
BitAllocation apply_action(const BitAllocation& bits, int action, const SystemConfig& cfg,
                           int b_max);

DqnResult dqn_run(const Evaluator& ev, const Constraints& cons, const DqnConfig& cfg);

}  // namespace nafd::moop
