#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nafd/moop/objective.hpp"

namespace nafd::moop {

struct Individual {
  BitAllocation bits;
  Objectives obj;
  Feasibility feas;
  int rank = 0;
  double crowding = 0.0;
};

struct Nsga2Config {
  int pop_size = 200;
  int generations = 300;
  double crossover_prob = 0.5;  // per-gene swap probability
  /// Per-gene mutation probability; <= 0 selects 1 / genome length.
  double mutation_prob = 0.0;
  std::uint64_t seed = 1;
};

struct Nsga2Result {
  std::vector<Individual> front;
  std::string diagnostic;
  std::size_t evaluations = 0;
};

/// Fronts of indices (best first) under plain Pareto dominance.
std::vector<std::vector<int>> fast_non_dominated_sort(const std::vector<Objectives>& objs);

/// Same with constrained dominance: feasible beats infeasible, and among
/// infeasible points the smaller violation wins.
std::vector<std::vector<int>> constrained_non_dominated_sort(const std::vector<Objectives>& objs,
                                                             const std::vector<double>& violation);

/// Crowding distance of each member of one front, aligned with `front`.
/// Boundary points get +infinity.
std::vector<double> crowding_distance(const std::vector<Objectives>& objs,
                                      const std::vector<int>& front);

Nsga2Result nsga2_run(const Evaluator& ev, const Constraints& cons, const Nsga2Config& cfg);

/// Exhaustive feasible Pareto set over [1, b_max]^genes, ordered by allocation.
std::vector<Individual> brute_force_front(const Evaluator& ev, const Constraints& cons);

}  // namespace nafd::moop
