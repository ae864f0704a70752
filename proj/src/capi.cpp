#include "nafd/nafd.h"

#include <exception>
#include <fstream>
#include <stdexcept>
#include <string>

#include "nafd/experiments.hpp"

struct nafd_scenario {
  nafd::Scenario sc;
};

struct nafd_table {
  nafd::Table t;
  std::string csv;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
nafd_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return NAFD_OK;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return NAFD_ERR_IO;
  } catch (const ConfigError& e) {
    g_last_error = e.what();
    return NAFD_ERR_CONFIG;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return NAFD_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NAFD_ERR_RUNTIME;
  } catch (...) {
    g_last_error = "unknown error";
    return NAFD_ERR_RUNTIME;
  }
}

nafd_status null_error(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return NAFD_ERR_NULL;
}

nafd::ExperimentConfig parse_or_throw(const std::string& yaml) {
  try {
    return nafd::parse_config(yaml);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

nafd_status make_scenario(nafd::ExperimentConfig cfg, uint64_t seed, nafd_scenario** out) {
  return guarded([&] {
    if (seed != 0) cfg.seed = seed;
    *out = new nafd_scenario{nafd::Scenario::build(cfg)};
  });
}

template <typename T>
std::vector<T> expand(int mask, int first_bit, T first, T second, const char* what) {
  std::vector<T> out;
  if (mask & first_bit) out.push_back(first);
  if (mask & (first_bit << 1)) out.push_back(second);
  if (out.empty() || (mask & ~3)) throw std::invalid_argument(std::string("invalid ") + what);
  return out;
}

std::vector<nafd::Scheme> schemes(nafd_scheme s) {
  return expand(static_cast<int>(s), 1, nafd::Scheme::kMR, nafd::Scheme::kZF, "scheme");
}
std::vector<nafd::CsiMode> csis(nafd_csi c) {
  return expand(static_cast<int>(c), 1, nafd::CsiMode::kEstimated, nafd::CsiMode::kStatistical,
                "CSI mode");
}
std::vector<nafd::IcMode> ics(nafd_ic i) {
  return expand(static_cast<int>(i), 1, nafd::IcMode::kWith, nafd::IcMode::kWithout, "IC mode");
}

nafd::Scheme single_scheme(nafd_scheme s) {
  const auto v = schemes(s);
  if (v.size() != 1) throw std::invalid_argument("exactly one scheme required");
  return v.front();
}

nafd_table* wrap(nafd::Table t) { return new nafd_table{std::move(t), {}, {}}; }

}  // namespace

extern "C" {

const char* nafd_last_error(void) { return g_last_error.c_str(); }
const char* nafd_version(void) { return "0.1.0"; }

nafd_status nafd_scenario_default(uint64_t seed, nafd_scenario** out) {
  if (!out) return null_error("out");
  return make_scenario(nafd::ExperimentConfig{}, seed, out);
}

nafd_status nafd_scenario_load(const char* path, uint64_t seed, nafd_scenario** out) {
  if (!path) return null_error("path");
  if (!out) return null_error("out");
  nafd::ExperimentConfig cfg;
  const nafd_status st = guarded([&] {
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open config file '") + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    cfg = parse_or_throw(text);
  });
  if (st != NAFD_OK) return st;
  return make_scenario(std::move(cfg), seed, out);
}

nafd_status nafd_scenario_from_yaml(const char* yaml, uint64_t seed, nafd_scenario** out) {
  if (!yaml) return null_error("yaml");
  if (!out) return null_error("out");
  nafd::ExperimentConfig cfg;
  const nafd_status st = guarded([&] { cfg = parse_or_throw(yaml); });
  if (st != NAFD_OK) return st;
  return make_scenario(std::move(cfg), seed, out);
}

void nafd_scenario_free(nafd_scenario* s) { delete s; }

nafd_status nafd_scenario_seed(const nafd_scenario* s, uint64_t* seed) {
  if (!s) return null_error("scenario");
  if (!seed) return null_error("seed");
  *seed = s->sc.cfg.seed;
  return NAFD_OK;
}

nafd_status nafd_scenario_geometry(const nafd_scenario* s, nafd_table** out) {
  if (!s) return null_error("scenario");
  if (!out) return null_error("out");
  return guarded([&] {
    nafd::Table t;
    t.header = {"kind", "index", "x_m", "y_m"};
    const auto& g = s->sc.geometry;
    auto emit = [&](const char* kind, const std::vector<nafd::Point2>& pts) {
      for (std::size_t i = 0; i < pts.size(); ++i)
        t.add({std::string(kind), static_cast<std::int64_t>(i), pts[i].x, pts[i].y});
    };
    emit("ul_rau", g.ul_raus);
    emit("dl_rau", g.dl_raus);
    emit("ul_user", g.ul_users);
    emit("dl_user", g.dl_users);
    *out = wrap(std::move(t));
  });
}

nafd_status nafd_rho(int bits, double* out) {
  if (!out) return null_error("out");
  return guarded([&] { *out = nafd::rho(bits); });
}

nafd_status nafd_closed_form(const nafd_scenario* s, nafd_scheme scheme, nafd_csi csi, nafd_ic ic,
                             const int* bits, size_t n_bits, double* r_ul, double* r_dl,
                             double* sum_se, double* ee) {
  if (!s) return null_error("scenario");
  if (!bits) return null_error("bits");
  return guarded([&] {
    const auto& cfg = s->sc.cfg;
    const nafd::Scheme sch = single_scheme(scheme);
    const auto c = csis(csi);
    const auto i = ics(ic);
    if (c.size() != 1 || i.size() != 1)
      throw std::invalid_argument("exactly one CSI mode and one IC mode required");
    const auto alloc = nafd::BitAllocation::from_flat(cfg.system, std::span<const int>(bits, n_bits));
    alloc.validate(cfg.system, cfg.quant.b_max);
    const nafd::RateReport r =
        nafd::closed_form_rates(s->sc.stats, cfg.system, sch, alloc, c[0], i[0], cfg.rates);
    if (r_ul) std::copy(r.r_ul.begin(), r.r_ul.end(), r_ul);
    if (r_dl) std::copy(r.r_dl.begin(), r.r_dl.end(), r_dl);
    if (sum_se) *sum_se = r.sum_se;
    if (ee) *ee = nafd::energy_efficiency(r, alloc, cfg.system, cfg.power, sch);
  });
}

void nafd_validate_options_init(nafd_validate_options* o) {
  if (!o) return;
  *o = {NAFD_SCHEME_BOTH, NAFD_CSI_BOTH, NAFD_IC_BOTH, 1, 10, 0, 0.10};
}

void nafd_sweep_options_init(nafd_sweep_options* o) {
  if (!o) return;
  *o = {NAFD_SCHEME_BOTH, NAFD_CSI_BOTH, NAFD_IC_BOTH, 1, 12};
}

void nafd_tradeoff_options_init(nafd_tradeoff_options* o) {
  if (!o) return;
  *o = {NAFD_SCHEME_MR, 4, 9, 6, 32, 2};
}

void nafd_optimize_options_init(nafd_optimize_options* o) {
  if (!o) return;
  *o = {NAFD_SCHEME_MR, NAFD_METHOD_NSGA2, -1, -1, -1};
}

nafd_status nafd_validate(const nafd_scenario* s, const nafd_validate_options* o, nafd_table** out,
                          int* all_pass) {
  if (!s) return null_error("scenario");
  if (!o) return null_error("options");
  if (!out) return null_error("out");
  return guarded([&] {
    nafd::ValidateOptions v;
    v.schemes = schemes(o->scheme);
    v.csi = csis(o->csi);
    v.ic = ics(o->ic);
    v.bits_min = o->bits_min;
    v.bits_max = o->bits_max;
    v.trials = o->trials;
    v.tol = o->tol;
    nafd::ValidateResult r = nafd::run_validate(s->sc, v);
    if (all_pass) *all_pass = r.all_pass() ? 1 : 0;
    *out = wrap(std::move(r.table));
  });
}

nafd_status nafd_sweep_bits(const nafd_scenario* s, const nafd_sweep_options* o, nafd_table** out) {
  if (!s) return null_error("scenario");
  if (!o) return null_error("options");
  if (!out) return null_error("out");
  return guarded([&] {
    nafd::SweepOptions v;
    v.schemes = schemes(o->scheme);
    v.csi = csis(o->csi);
    v.ic = ics(o->ic);
    v.bits_min = o->bits_min;
    v.bits_max = o->bits_max;
    *out = wrap(nafd::run_sweep_bits(s->sc, v));
  });
}

nafd_status nafd_tradeoff(const nafd_scenario* s, const nafd_tradeoff_options* o, nafd_table** out) {
  if (!s) return null_error("scenario");
  if (!o) return null_error("options");
  if (!out) return null_error("out");
  return guarded([&] {
    nafd::TradeoffOptions v;
    v.scheme = single_scheme(o->scheme);
    v.bits_min = o->bits_min;
    v.bits_max = o->bits_max;
    v.m_min = o->m_min;
    v.m_max = o->m_max;
    v.m_step = o->m_step;
    *out = wrap(nafd::run_tradeoff(s->sc, v));
  });
}

nafd_status nafd_optimize(const nafd_scenario* s, const nafd_optimize_options* o, nafd_table** front,
                          nafd_table** trace, nafd_table** summary) {
  if (!s) return null_error("scenario");
  if (!o) return null_error("options");
  return guarded([&] {
    nafd::Scenario sc = s->sc;
    if (o->generations >= 0) sc.cfg.nsga2.generations = o->generations;
    if (o->pop_size >= 0) sc.cfg.nsga2.pop_size = o->pop_size;
    if (o->iterations >= 0) sc.cfg.dqn.iterations = o->iterations;
    nafd::OptimizeOptions v;
    v.scheme = single_scheme(o->scheme);
    if (o->method == NAFD_METHOD_NSGA2) v.method = nafd::Method::kNsga2;
    else if (o->method == NAFD_METHOD_DQN) v.method = nafd::Method::kDqn;
    else throw std::invalid_argument("invalid method");
    nafd::OptimizeResult r = nafd::run_optimize(sc, v);
    if (front) *front = wrap(std::move(r.front));
    if (trace) *trace = wrap(std::move(r.trace));
    if (summary) *summary = wrap(std::move(r.summary));
  });
}

size_t nafd_table_rows(const nafd_table* t) { return t ? t->t.rows.size() : 0; }
size_t nafd_table_cols(const nafd_table* t) { return t ? t->t.header.size() : 0; }

const char* nafd_table_csv(nafd_table* t) {
  if (!t) return nullptr;
  if (t->csv.empty()) t->csv = t->t.to_csv();
  return t->csv.c_str();
}

const char* nafd_table_json(nafd_table* t) {
  if (!t) return nullptr;
  if (t->json.empty()) t->json = t->t.to_json();
  return t->json.c_str();
}

void nafd_table_free(nafd_table* t) { delete t; }

}  // extern "C"
