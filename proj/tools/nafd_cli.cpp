#include <nafd/nafd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

struct Args {
  std::string config;
  uint64_t seed = 0;
  int trials = 0;
  std::string scheme;
  std::string csi = "both";
  std::string ic = "both";
  std::string method = "nsga2";
  std::string out;
  bool json = false;
  double tol = 0.10;
  int bits_min = 0;
  int bits_max = 0;
  int m_min = 6;
  int m_max = 32;
  int m_step = 2;
  int generations = -1;
  int pop_size = -1;
  int iterations = -1;
};

struct Failure {
  int code;
};

void check(nafd_status st) {
  if (st == NAFD_OK) return;
  std::cerr << "error: " << nafd_last_error() << '\n';
  throw Failure{1};
}

nafd_scheme to_scheme(const std::string& s, bool allow_both) {
  if (s == "mr") return NAFD_SCHEME_MR;
  if (s == "zf") return NAFD_SCHEME_ZF;
  if (allow_both && (s.empty() || s == "both")) return NAFD_SCHEME_BOTH;
  if (s.empty()) return NAFD_SCHEME_MR;
  std::cerr << "error: --scheme must be mr|zf\n";
  throw Failure{1};
}

nafd_csi to_csi(const std::string& s) {
  static const std::map<std::string, nafd_csi> m = {
      {"estimated", NAFD_CSI_ESTIMATED}, {"statistical", NAFD_CSI_STATISTICAL}, {"both", NAFD_CSI_BOTH}};
  return m.at(s);
}

nafd_ic to_ic(const std::string& s) {
  static const std::map<std::string, nafd_ic> m = {{"on", NAFD_IC_ON}, {"off", NAFD_IC_OFF}, {"both", NAFD_IC_BOTH}};
  return m.at(s);
}

nafd_scenario* open_scenario(const Args& a) {
  nafd_scenario* s = nullptr;
  if (a.config.empty()) check(nafd_scenario_default(a.seed, &s));
  else check(nafd_scenario_load(a.config.c_str(), a.seed, &s));
  return s;
}

void write_file(const std::string& path, const char* text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write '" << path << "'\n";
    throw Failure{1};
  }
  f << text;
}

// Writes a table to `path` (CSV, plus a JSON mirror with --json) or to stdout.
void emit(nafd_table* t, const std::string& path, bool json) {
  if (path.empty()) {
    std::fputs(json ? nafd_table_json(t) : nafd_table_csv(t), stdout);
    return;
  }
  write_file(path, nafd_table_csv(t));
  if (json) write_file(std::filesystem::path(path).replace_extension(".json").string(), nafd_table_json(t));
}

std::string sibling(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  return (p.parent_path() / (p.stem().string() + "." + tag + ext)).string();
}

int cmd_validate(const Args& a) {
  nafd_scenario* s = open_scenario(a);
  nafd_validate_options o;
  nafd_validate_options_init(&o);
  o.scheme = to_scheme(a.scheme, true);
  o.csi = to_csi(a.csi);
  o.ic = to_ic(a.ic);
  if (a.bits_min > 0) o.bits_min = a.bits_min;
  if (a.bits_max > 0) o.bits_max = a.bits_max;
  o.trials = a.trials;
  o.tol = a.tol;
  nafd_table* t = nullptr;
  int pass = 0;
  const nafd_status st = nafd_validate(s, &o, &t, &pass);
  nafd_scenario_free(s);
  check(st);
  emit(t, a.out, a.json);
  nafd_table_free(t);
  if (!pass) {
    std::cerr << "validate: at least one point exceeds tolerance " << a.tol << '\n';
    return 2;
  }
  return 0;
}

int cmd_sweep(const Args& a) {
  nafd_scenario* s = open_scenario(a);
  nafd_sweep_options o;
  nafd_sweep_options_init(&o);
  o.scheme = to_scheme(a.scheme, true);
  o.csi = to_csi(a.csi);
  o.ic = to_ic(a.ic);
  if (a.bits_min > 0) o.bits_min = a.bits_min;
  if (a.bits_max > 0) o.bits_max = a.bits_max;
  nafd_table* t = nullptr;
  const nafd_status st = nafd_sweep_bits(s, &o, &t);
  nafd_scenario_free(s);
  check(st);
  emit(t, a.out, a.json);
  nafd_table_free(t);
  return 0;
}

int cmd_tradeoff(const Args& a) {
  nafd_scenario* s = open_scenario(a);
  nafd_tradeoff_options o;
  nafd_tradeoff_options_init(&o);
  o.scheme = to_scheme(a.scheme, false);
  if (a.bits_min > 0) o.bits_min = a.bits_min;
  if (a.bits_max > 0) o.bits_max = a.bits_max;
  o.m_min = a.m_min;
  o.m_max = a.m_max;
  o.m_step = a.m_step;
  nafd_table* t = nullptr;
  const nafd_status st = nafd_tradeoff(s, &o, &t);
  nafd_scenario_free(s);
  check(st);
  emit(t, a.out, a.json);
  nafd_table_free(t);
  return 0;
}

int cmd_optimize(const Args& a) {
  nafd_scenario* s = open_scenario(a);
  nafd_optimize_options o;
  nafd_optimize_options_init(&o);
  o.scheme = to_scheme(a.scheme, false);
  o.method = a.method == "dqn" ? NAFD_METHOD_DQN : NAFD_METHOD_NSGA2;
  o.generations = a.generations;
  o.pop_size = a.pop_size;
  o.iterations = a.iterations;
  nafd_table *front = nullptr, *trace = nullptr, *summary = nullptr;
  const nafd_status st = nafd_optimize(s, &o, &front, &trace, &summary);
  nafd_scenario_free(s);
  check(st);
  if (a.out.empty()) {
    emit(front, "", a.json);
    std::fputs("\n", stdout);
    emit(summary, "", a.json);
  } else {
    emit(front, a.out, a.json);
    emit(summary, sibling(a.out, "summary"), a.json);
    if (o.method == NAFD_METHOD_DQN) emit(trace, sibling(a.out, "trace"), a.json);
  }
  nafd_table_free(front);
  nafd_table_free(trace);
  nafd_table_free(summary);
  return 0;
}

int cmd_geometry(const Args& a) {
  nafd_scenario* s = open_scenario(a);
  nafd_table* t = nullptr;
  const nafd_status st = nafd_scenario_geometry(s, &t);
  nafd_scenario_free(s);
  check(st);
  emit(t, a.out, a.json);
  nafd_table_free(t);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NAFD distributed massive-MIMO toolkit with low-resolution ADCs"};
  app.require_subcommand(1);
  Args a;

  auto common = [&a](CLI::App* c) {
    c->add_option("--config", a.config, "YAML configuration file")->check(CLI::ExistingFile);
    c->add_option("--seed", a.seed, "Seed (0 keeps the configured seed)");
    c->add_option("--out", a.out, "Output CSV path (stdout when omitted)");
    c->add_flag("--json", a.json, "Emit JSON records (mirrored next to --out)");
  };
  auto bit_range = [&a](CLI::App* c) {
    c->add_option("--bits-min", a.bits_min, "Lowest uniform bit width")->check(CLI::PositiveNumber);
    c->add_option("--bits-max", a.bits_max, "Highest uniform bit width")->check(CLI::PositiveNumber);
  };
  const auto schemes = CLI::IsMember({"mr", "zf"});
  const auto csi = CLI::IsMember({"estimated", "statistical", "both"});
  const auto ic = CLI::IsMember({"on", "off", "both"});

  auto* validate = app.add_subcommand("validate", "Closed-form rates against the Monte-Carlo oracle");
  common(validate);
  bit_range(validate);
  validate->add_option("--scheme", a.scheme, "mr|zf (both when omitted)")->check(schemes);
  validate->add_option("--csi", a.csi, "estimated|statistical|both")->check(csi);
  validate->add_option("--ic", a.ic, "on|off|both")->check(ic);
  validate->add_option("--trials", a.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  validate->add_option("--tol", a.tol, "Relative tolerance on user-averaged rates")
      ->check(CLI::NonNegativeNumber);

  auto* sweep = app.add_subcommand("sweep-bits", "Closed-form SE and EE over uniform bit widths");
  common(sweep);
  bit_range(sweep);
  sweep->add_option("--scheme", a.scheme, "mr|zf (both when omitted)")->check(schemes);
  sweep->add_option("--csi", a.csi, "estimated|statistical|both")->check(csi);
  sweep->add_option("--ic", a.ic, "on|off|both")->check(ic);

  auto* tradeoff = app.add_subcommand("tradeoff", "SE/EE pairs over bit widths and antenna counts");
  common(tradeoff);
  bit_range(tradeoff);
  tradeoff->add_option("--scheme", a.scheme, "mr|zf")->check(schemes);
  tradeoff->add_option("--m-min", a.m_min, "Smallest antenna count")->check(CLI::PositiveNumber);
  tradeoff->add_option("--m-max", a.m_max, "Largest antenna count")->check(CLI::PositiveNumber);
  tradeoff->add_option("--m-step", a.m_step, "Antenna count step")->check(CLI::PositiveNumber);

  auto* optimize = app.add_subcommand("optimize", "Bit allocation with NSGA-II or DQN");
  common(optimize);
  optimize->add_option("--scheme", a.scheme, "mr|zf")->check(schemes);
  optimize->add_option("--method", a.method, "nsga2|dqn")->check(CLI::IsMember({"nsga2", "dqn"}));
  optimize->add_option("--generations", a.generations, "NSGA-II generations")->check(CLI::NonNegativeNumber);
  optimize->add_option("--pop-size", a.pop_size, "NSGA-II population (even)")->check(CLI::PositiveNumber);
  optimize->add_option("--iterations", a.iterations, "DQN iterations")->check(CLI::NonNegativeNumber);

  auto* geometry = app.add_subcommand("geometry", "Sampled RAU and user positions");
  common(geometry);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*validate) return cmd_validate(a);
    if (*sweep) return cmd_sweep(a);
    if (*tradeoff) return cmd_tradeoff(a);
    if (*optimize) return cmd_optimize(a);
    if (*geometry) return cmd_geometry(a);
  } catch (const Failure& f) {
    return f.code;
  }
  return 1;
}
