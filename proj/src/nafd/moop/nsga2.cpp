#include "nafd/moop/nsga2.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "nafd/rng.hpp"

namespace nafd::moop {

namespace {

std::vector<std::vector<int>> sort_by(int n, auto&& better) {
  std::vector<std::vector<int>> dominated(static_cast<std::size_t>(n));
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> fronts(1);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      if (better(p, q)) dominated[p].push_back(q);
      else if (better(q, p)) ++count[p];
    }
    if (count[p] == 0) fronts[0].push_back(p);
  }
  for (std::size_t i = 0; !fronts[i].empty(); ++i) {
    std::vector<int> next;
    for (int p : fronts[i])
      for (int q : dominated[p])
        if (--count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

Individual make_individual(const Evaluator& ev, const Constraints& cons, BitAllocation bits) {
  Individual ind;
  const Evaluation e = ev.evaluate(bits);
  ind.obj = e.obj;
  ind.feas = check_feasible(bits, e, cons, ev.config());
  ind.bits = std::move(bits);
  return ind;
}

// Rank and crowding for the whole population; returns the fronts.
std::vector<std::vector<int>> assign_rank(std::vector<Individual>& pop) {
  std::vector<Objectives> objs;
  std::vector<double> viol;
  for (const auto& p : pop) {
    objs.push_back(p.obj);
    viol.push_back(p.feas.feasible ? 0.0 : std::max(p.feas.violation, 1e-300));
  }
  auto fronts = constrained_non_dominated_sort(objs, viol);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const auto cd = crowding_distance(objs, fronts[r]);
    for (std::size_t i = 0; i < fronts[r].size(); ++i) {
      pop[fronts[r][i]].rank = static_cast<int>(r);
      pop[fronts[r][i]].crowding = cd[i];
    }
  }
  return fronts;
}

bool tournament_better(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

}  // namespace

std::vector<std::vector<int>> fast_non_dominated_sort(const std::vector<Objectives>& objs) {
  return sort_by(static_cast<int>(objs.size()),
                 [&](int p, int q) { return dominates(objs[p], objs[q]); });
}

std::vector<std::vector<int>> constrained_non_dominated_sort(const std::vector<Objectives>& objs,
                                                             const std::vector<double>& violation) {
  if (objs.size() != violation.size())
    throw std::invalid_argument("constrained sort: size mismatch");
  return sort_by(static_cast<int>(objs.size()), [&](int p, int q) {
    const bool fp = violation[p] <= 0.0;
    const bool fq = violation[q] <= 0.0;
    if (fp && fq) return dominates(objs[p], objs[q]);
    if (fp != fq) return fp;
    return violation[p] < violation[q];
  });
}

std::vector<double> crowding_distance(const std::vector<Objectives>& objs,
                                      const std::vector<int>& front) {
  const std::size_t n = front.size();
  std::vector<double> d(n, 0.0);
  if (n <= 2) {
    std::fill(d.begin(), d.end(), std::numeric_limits<double>::infinity());
    return d;
  }
  for (int obj = 0; obj < 2; ++obj) {
    auto val = [&](std::size_t i) { return obj == 0 ? objs[front[i]].f1 : objs[front[i]].f2; };
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return val(a) < val(b); });
    d[order.front()] = d[order.back()] = std::numeric_limits<double>::infinity();
    const double span = val(order.back()) - val(order.front());
    if (span <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i)
      d[order[i]] += (val(order[i + 1]) - val(order[i - 1])) / span;
  }
  return d;
}

Nsga2Result nsga2_run(const Evaluator& ev, const Constraints& cons, const Nsga2Config& cfg) {
  if (cfg.pop_size < 2 || cfg.pop_size % 2 != 0)
    throw std::invalid_argument("pop_size must be even and >= 2");
  if (cfg.generations < 0) throw std::invalid_argument("generations must be >= 0");

  const SystemConfig& sc = ev.config();
  const int b_max = ev.b_max();
  const int genes = sc.n_total() + sc.k_dl;
  const double p_mut = cfg.mutation_prob > 0.0 ? cfg.mutation_prob : 1.0 / genes;
  Rng rng = make_rng(cfg.seed, 0, Stream::kSolver);
  std::uniform_int_distribution<int> gene_dist(1, b_max);
  std::uniform_int_distribution<int> pick(0, cfg.pop_size - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Individual> pop;
  for (int i = 0; i < cfg.pop_size; ++i) {
    std::vector<int> g(static_cast<std::size_t>(genes));
    for (int& x : g) x = gene_dist(rng);
    pop.push_back(make_individual(ev, cons, BitAllocation::from_flat(sc, g)));
  }
  assign_rank(pop);

  auto select = [&]() -> const Individual& {
    const Individual& a = pop[pick(rng)];
    const Individual& b = pop[pick(rng)];
    return tournament_better(b, a) ? b : a;
  };

  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::vector<Individual> merged = pop;
    while (static_cast<int>(merged.size()) < 2 * cfg.pop_size) {
      std::vector<int> c1 = select().bits.flat();
      std::vector<int> c2 = select().bits.flat();
      for (int i = 0; i < genes; ++i)
        if (unit(rng) < cfg.crossover_prob) std::swap(c1[i], c2[i]);
      for (auto* c : {&c1, &c2}) {
        for (int& x : *c) {
          if (unit(rng) < p_mut) x = std::clamp(x + (unit(rng) < 0.5 ? -1 : 1), 1, b_max);
        }
        merged.push_back(make_individual(ev, cons, BitAllocation::from_flat(sc, *c)));
      }
    }

    // Drop duplicate allocations so the survivors keep diversity.
    std::vector<Individual> unique;
    std::set<std::vector<int>> seen;
    for (auto& m : merged)
      if (seen.insert(m.bits.flat()).second) unique.push_back(std::move(m));

    const auto fronts = assign_rank(unique);
    std::vector<Individual> next;
    for (const auto& f : fronts) {
      if (next.size() + f.size() <= static_cast<std::size_t>(cfg.pop_size)) {
        for (int i : f) next.push_back(unique[i]);
        continue;
      }
      std::vector<int> rest = f;
      std::sort(rest.begin(), rest.end(), [&](int a, int b) {
        if (unique[a].crowding != unique[b].crowding) return unique[a].crowding > unique[b].crowding;
        return unique[a].bits < unique[b].bits;
      });
      for (int i : rest) {
        if (next.size() == static_cast<std::size_t>(cfg.pop_size)) break;
        next.push_back(unique[i]);
      }
      break;
    }
    for (std::size_t i = 0; next.size() < static_cast<std::size_t>(cfg.pop_size); ++i)
      next.push_back(next[i % next.size()]);
    pop = std::move(next);
    assign_rank(pop);
  }

  Nsga2Result res;
  std::set<std::vector<int>> seen;
  for (const auto& p : pop)
    if (p.rank == 0 && p.feas.feasible && seen.insert(p.bits.flat()).second) res.front.push_back(p);
  std::sort(res.front.begin(), res.front.end(),
            [](const Individual& a, const Individual& b) { return a.bits < b.bits; });
  res.evaluations = ev.evaluations();
  if (res.front.empty()) res.diagnostic = "no feasible allocation found";
  return res;
}

std::vector<Individual> brute_force_front(const Evaluator& ev, const Constraints& cons) {
  const SystemConfig& sc = ev.config();
  const int genes = sc.n_total() + sc.k_dl;
  std::vector<int> g(static_cast<std::size_t>(genes), 1);
  std::vector<Individual> feasible;
  while (true) {
    Individual ind = make_individual(ev, cons, BitAllocation::from_flat(sc, g));
    if (ind.feas.feasible) feasible.push_back(std::move(ind));
    int i = genes - 1;
    while (i >= 0 && g[i] == ev.b_max()) g[i--] = 1;
    if (i < 0) break;
    ++g[i];
  }
  std::vector<Individual> front;
  for (const auto& a : feasible) {
    const bool dominated = std::any_of(feasible.begin(), feasible.end(),
                                       [&](const Individual& b) { return dominates(b.obj, a.obj); });
    if (!dominated) front.push_back(a);
  }
  return front;
}

}  // namespace nafd::moop
