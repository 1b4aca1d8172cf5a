#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "swnet/epidemic.hpp"
#include "swnet/errors.hpp"
#include "swnet/generator.hpp"
#include "swnet/graph.hpp"
#include "swnet/sweep.hpp"
#include "swnet/tuner.hpp"

namespace swnet::cli {

using nlohmann::json;

namespace {

// --- JSON helpers -----------------------------------------------------------

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key) || j.at(key).is_null()) {
    v.reset();
  } else {
    v = j.at(key).get<T>();
  }
}

template <class T>
void read(const json& j, const char* key, T& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

json anneal_json(const AnnealOptions& a) {
  return {{"t0", opt(a.t0)},           {"cooling", a.cooling},
          {"epoch_len", a.epoch_len},  {"max_iters", a.max_iters},
          {"stall_iters", a.stall_iters}, {"apl_sources", a.apl_sources}};
}

AnnealOptions anneal_from(const json& j) {
  AnnealOptions a;
  read_opt(j, "t0", a.t0);
  read(j, "cooling", a.cooling);
  read(j, "epoch_len", a.epoch_len);
  read(j, "max_iters", a.max_iters);
  read(j, "stall_iters", a.stall_iters);
  read(j, "apl_sources", a.apl_sources);
  return a;
}

// Metrics are rounded to six fractional digits so sidecars are stable.
double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

// --- Library configuration from the run config -------------------------------

AnnealSchedule schedule(const RunConfig& cfg, const AnnealOptions& a, double tol) {
  AnnealSchedule s;
  s.t0 = a.t0;
  s.cooling = a.cooling;
  s.epoch_len = a.epoch_len;
  s.max_iters = a.max_iters;
  s.stall_iters = a.stall_iters;
  s.apl_sources = a.apl_sources;
  s.tol = tol;
  s.workers = cfg.workers;
  return s;
}

JointSchedule joint_schedule(const RunConfig& cfg) {
  JointSchedule s;
  s.cc = schedule(cfg, cfg.anneal_cc, cfg.tol_cc);
  s.apl = schedule(cfg, cfg.anneal_apl, cfg.tol_apl);
  s.max_rounds = cfg.max_rounds;
  return s;
}

EpidemicParams epidemic_params(const RunConfig& cfg) {
  EpidemicParams e;
  e.tau_i = cfg.tau_i;
  e.tau_r = cfg.tau_r;
  e.init_infected_frac = cfg.init_infected;
  e.init_recovered_frac = cfg.init_recovered;
  return e;
}

RegimeConfig regime_config(const RunConfig& cfg) {
  RegimeConfig r;
  r.window_len = cfg.window;
  r.hop = cfg.hop;
  r.peak_ratio = cfg.peak_ratio;
  r.min_amplitude = cfg.min_amplitude;
  return r;
}

long burn_in(const RunConfig& cfg) { return cfg.burn_in.value_or(cfg.steps / 2); }

// --- Output records ----------------------------------------------------------

json trace_json(const std::vector<TracePoint>& trace, const Graph& g, int workers) {
  json iterations = json::array();
  for (const TracePoint& p : trace) {
    iterations.push_back({{"iter", p.iter},
                          {"metric", round6(p.metric)},
                          {"temperature", round6(p.temperature)},
                          {"accepted", p.accepted}});
  }
  return {{"iterations", std::move(iterations)},
          {"final",
           {{"apl", round6(average_path_length(g, workers).apl)},
            {"cc", round6(transitivity(g).cc)}}}};
}

json report_json(const RegimeReport& r) {
  return {{"regime", to_string(r.regime)},
          {"mean_rho_i", round6(r.mean_rho_i)},
          {"amplitude_mean", round6(r.amplitude_mean)},
          {"amplitude_max", round6(r.amplitude_max)},
          {"dominant_period", r.dominant_period ? json(round6(*r.dominant_period)) : json()},
          {"peak_ratio", round6(r.peak_ratio)},
          {"oscillating_frames", round6(r.oscillating_frames)}};
}

json fixed_point_json(const CoarseFixedPoint& fp) {
  json eig = json::array();
  for (int k = 0; k < 2; ++k) {
    eig.push_back({round6(fp.eigenvalues(k).real()), round6(fp.eigenvalues(k).imag())});
  }
  return {{"rho_i", round6(fp.state.rho_i)},
          {"rho_r", round6(fp.state.rho_r)},
          {"residual", round6(fp.residual)},
          {"converged", fp.converged},
          {"iterations", fp.iterations},
          {"eigenvalues", std::move(eig)},
          {"multipliers", {round6(fp.multipliers(0)), round6(fp.multipliers(1))}},
          {"stable", fp.stable},
          {"complex_pair", fp.complex_pair}};
}

// --- Commands ------------------------------------------------------------------

struct Outcome {
  json seeds = json::object();
  json metrics = json::object();
  int status = kExitOk;
};

Outcome run_generate(const RunConfig& cfg, std::ostream& out) {
  const Graph g = watts_strogatz({cfg.nodes, cfg.degree, cfg.p, cfg.seed});
  save_edge_list(cfg.out, g);
  Outcome o;
  o.seeds = {{"generator", cfg.seed}};
  o.metrics = {{"n", g.num_nodes()},
               {"m", g.num_edges()},
               {"apl", round6(average_path_length(g, cfg.workers).apl)},
               {"cc", round6(transitivity(g).cc)},
               {"seed", cfg.seed},
               {"p", cfg.p},
               {"k", cfg.degree}};
  out << o.metrics.dump() << '\n';
  return o;
}

Outcome run_stats(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_edge_list(cfg.in);
  const bool connected = is_connected(g);
  Outcome o;
  o.metrics = {{"n", g.num_nodes()},
               {"m", g.num_edges()},
               {"apl", connected ? json(round6(average_path_length(g, cfg.workers).apl)) : json()},
               {"cc", round6(transitivity(g).cc)},
               {"connected", connected}};
  out << o.metrics.dump() << '\n';
  if (!cfg.out.empty()) write_json(cfg.out, o.metrics);
  return o;
}

Outcome run_tune(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_edge_list(cfg.in);
  RandomStream rng(cfg.seed);
  Outcome o;
  o.seeds = {{"tune", cfg.seed}};
  Graph tuned;
  std::vector<TracePoint> trace;
  TuneStatus status;
  if (cfg.command == "tune-joint") {
    JointResult r = tune_joint(g, *cfg.cc_target, *cfg.apl_target, joint_schedule(cfg), rng);
    tuned = std::move(r.graph);
    trace = std::move(r.trace);
    status = r.status;
    o.metrics = {{"apl", round6(r.apl)}, {"cc", round6(r.cc)}, {"rounds", r.rounds},
                 {"iterations", r.iterations}, {"accepted", r.accepted}};
  } else {
    const bool apl = cfg.command == "tune-apl";
    const AnnealSchedule s = apl ? schedule(cfg, cfg.anneal_apl, cfg.tol_apl)
                                 : schedule(cfg, cfg.anneal_cc, cfg.tol_cc);
    TuneResult r = tune(g, {apl ? Metric::Apl : Metric::Cc, *cfg.target}, s, rng);
    tuned = std::move(r.graph);
    trace = std::move(r.trace);
    status = r.status;
    o.metrics = {{"achieved", round6(r.achieved)},
                 {"iterations", r.iterations},
                 {"accepted", r.accepted},
                 {"rejected",
                  {{"metropolis", r.rejected.metropolis},
                   {"disconnected", r.rejected.disconnected},
                   {"no_candidate", r.rejected.no_candidate}}}};
  }
  save_edge_list(cfg.out, tuned);
  const json tr = trace_json(trace, tuned, cfg.workers);
  write_json(cfg.out + ".trace.json", tr);
  o.metrics["status"] = to_string(status);
  o.metrics["final"] = tr.at("final");
  out << o.metrics.dump() << '\n';
  if (status != TuneStatus::Converged) o.status = kExitFailed;
  return o;
}

Outcome run_simulate(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_edge_list(cfg.in);
  const EpidemicParams params = epidemic_params(cfg);
  RandomStream rng(cfg.seed);
  const DensitySeries series = run(g, params, cfg.steps, rng);
  std::ostringstream csv;
  write_density_csv(csv, series);
  write_text(cfg.out, csv.str());

  Outcome o;
  o.seeds = {{"simulate", cfg.seed}};
  const long b = burn_in(cfg);
  try {
    o.metrics = report_json(classify_regime(series, b, regime_config(cfg)));
  } catch (const SeriesTooShort&) {
    o.metrics = {{"regime", nullptr}};
  }
  o.metrics["final"] = {{"S", series.back().s}, {"I", series.back().i}, {"R", series.back().r}};
  out << o.metrics.dump() << '\n';
  return o;
}

Outcome run_sweep(const RunConfig& cfg, std::ostream& out) {
  const Graph base = load_edge_list(cfg.in);
  SweepConfig sc;
  sc.tuning = joint_schedule(cfg);
  sc.ensemble.replicas = cfg.replicas;
  sc.ensemble.steps = cfg.steps;
  sc.ensemble.burn_in = burn_in(cfg);
  sc.ensemble.regime = regime_config(cfg);
  sc.ensemble.workers = cfg.workers;
  sc.fixed_point = cfg.fixed_point;
  sc.newton.step.horizon = cfg.horizon;
  sc.newton.step.healing = cfg.healing;
  sc.newton.step.replicas = cfg.coarse_replicas;
  sc.newton.step.workers = cfg.workers;
  sc.newton.fd_step = cfg.fd_step;
  sc.newton.tol = cfg.newton_tol;
  sc.newton.max_iters = cfg.newton_iters;

  RandomStream rng(cfg.seed);
  const std::vector<SweepPoint> points = bifurcation_sweep(
      base, parse_axis(cfg.axis), *cfg.fixed, cfg.targets, epidemic_params(cfg), sc, rng);
  std::ostringstream csv;
  write_sweep_csv(csv, points);
  write_text(cfg.out, csv.str());

  Outcome o;
  o.seeds = {{"master", cfg.seed}};
  json rows = json::array();
  for (const SweepPoint& p : points) {
    json replicas = json::array();
    for (const RegimeReport& r : p.ensemble.replicas) replicas.push_back(report_json(r));
    json row = {{"target", round6(p.target)},
                {"seed", p.seed},
                {"tuning", to_string(p.tuning)},
                {"achieved_apl", round6(p.achieved_apl)},
                {"achieved_cc", round6(p.achieved_cc)},
                {"regime", to_string(p.ensemble.regime)},
                {"mean_i", round6(p.ensemble.mean_i)},
                {"mean_r", round6(p.ensemble.mean_r)},
                {"replicas", std::move(replicas)},
                {"fixed_point", p.fixed_point ? fixed_point_json(*p.fixed_point) : json()}};
    rows.push_back(std::move(row));
  }
  o.metrics = {{"points", std::move(rows)}};
  out << "wrote " << points.size() << " sweep points to " << cfg.out << '\n';
  return o;
}

// --- Argument parsing ----------------------------------------------------------

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Master random seed")->capture_default_str();
  sub->add_option("--workers", cfg.workers, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_in(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--in", cfg.in, "Input edge list")->required();
}

void add_out(CLI::App* sub, RunConfig& cfg, const char* what) {
  sub->add_option("--out", cfg.out, what)->required();
}

void add_anneal(CLI::App* sub, AnnealOptions& a, const std::string& prefix) {
  sub->add_option("--" + prefix + "t0", a.t0, "Initial temperature (default 10x initial error)");
  sub->add_option("--" + prefix + "cooling", a.cooling, "Cooling factor")
      ->capture_default_str();
  sub->add_option("--" + prefix + "epoch", a.epoch_len, "Accepted moves per temperature step")
      ->capture_default_str();
  sub->add_option("--" + prefix + "max-iters", a.max_iters, "Iteration budget")
      ->capture_default_str();
  sub->add_option("--" + prefix + "stall-iters", a.stall_iters,
                  "Give up after this many iterations without improvement (0: never)")
      ->capture_default_str();
  if (prefix == "apl-") {
    sub->add_option("--apl-sources", a.apl_sources,
                    "BFS sources of the sampled path-length estimate")
        ->capture_default_str();
  }
}

void add_epidemic(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tau-i", cfg.tau_i, "Infectious period")->capture_default_str();
  sub->add_option("--tau-r", cfg.tau_r, "Immune period")->capture_default_str();
  sub->add_option("--init-infected", cfg.init_infected, "Initial infected fraction")
      ->capture_default_str();
  sub->add_option("--init-recovered", cfg.init_recovered, "Initial recovered fraction")
      ->capture_default_str();
  sub->add_option("--steps", cfg.steps, "Time steps")->capture_default_str();
  sub->add_option("--burn-in", cfg.burn_in, "Steps discarded before classification (default half)");
  sub->add_option("--window", cfg.window, "STFT window length")->capture_default_str();
  sub->add_option("--hop", cfg.hop, "STFT hop")->capture_default_str();
  sub->add_option("--peak-ratio", cfg.peak_ratio, "Spectral peak over noise floor")
      ->capture_default_str();
  sub->add_option("--min-amplitude", cfg.min_amplitude, "Smallest oscillation amplitude")
      ->capture_default_str();
}

void add_tuning(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tol-apl", cfg.tol_apl, "Path-length tolerance")->capture_default_str();
  sub->add_option("--tol-cc", cfg.tol_cc, "Clustering tolerance")->capture_default_str();
  add_anneal(sub, cfg.anneal_apl, "apl-");
  add_anneal(sub, cfg.anneal_cc, "cc-");
  sub->add_option("--max-rounds", cfg.max_rounds, "Alternating rounds")->capture_default_str();
}

void validate(const RunConfig& cfg) {
  if (cfg.command == "generate") {
    if (cfg.degree % 2 != 0) throw UsageError("--degree must be even, got " + std::to_string(cfg.degree));
    if (cfg.degree < 2 || cfg.degree >= cfg.nodes) {
      throw UsageError("--degree must satisfy 2 <= degree < nodes");
    }
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
  }
  if (cfg.command == "tune-joint" && (!cfg.cc_target || !cfg.apl_target)) {
    throw UsageError("tune-joint needs --cc and --apl");
  }
  if (cfg.command == "sweep") {
    if (cfg.axis != "apl" && cfg.axis != "cc") throw UsageError("--axis must be apl or cc");
    if (!cfg.fixed) throw UsageError("sweep needs --fixed");
    if (cfg.targets.empty()) throw UsageError("sweep needs --targets or --from/--to/--step");
    if (!std::is_sorted(cfg.targets.begin(), cfg.targets.end())) {
      throw UsageError("sweep targets must be sorted");
    }
    if (cfg.replicas < 1 || cfg.coarse_replicas < 1) throw UsageError("replica counts must be >= 1");
    if (cfg.horizon < 1 || cfg.healing < 0) throw UsageError("--horizon must be >= 1, --healing >= 0");
  }
  if (cfg.workers < 1) throw UsageError("--workers must be >= 1");
  if (cfg.command == "simulate" || cfg.command == "sweep") {
    if (cfg.tau_i < 1 || cfg.tau_r < 1) throw UsageError("--tau-i and --tau-r must be >= 1");
    if (cfg.steps < 1) throw UsageError("--steps must be >= 1");
    if (cfg.burn_in && (*cfg.burn_in < 0 || *cfg.burn_in > cfg.steps)) {
      throw UsageError("--burn-in must lie in [0, steps]");
    }
  }
  if (!cfg.in.empty() && !std::filesystem::exists(cfg.in)) {
    throw FileNotFound("input file not found: " + cfg.in);
  }
}

}  // namespace

json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"in", c.in},
          {"out", c.out},
          {"seed", c.seed},
          {"workers", c.workers},
          {"nodes", c.nodes},
          {"degree", c.degree},
          {"p", c.p},
          {"target", opt(c.target)},
          {"cc_target", opt(c.cc_target)},
          {"apl_target", opt(c.apl_target)},
          {"tol_apl", c.tol_apl},
          {"tol_cc", c.tol_cc},
          {"anneal_apl", anneal_json(c.anneal_apl)},
          {"anneal_cc", anneal_json(c.anneal_cc)},
          {"max_rounds", c.max_rounds},
          {"tau_i", c.tau_i},
          {"tau_r", c.tau_r},
          {"init_infected", c.init_infected},
          {"init_recovered", c.init_recovered},
          {"steps", c.steps},
          {"burn_in", opt(c.burn_in)},
          {"window", c.window},
          {"hop", c.hop},
          {"peak_ratio", c.peak_ratio},
          {"min_amplitude", c.min_amplitude},
          {"axis", c.axis},
          {"fixed", opt(c.fixed)},
          {"targets", c.targets},
          {"replicas", c.replicas},
          {"fixed_point", c.fixed_point},
          {"horizon", c.horizon},
          {"healing", c.healing},
          {"coarse_replicas", c.coarse_replicas},
          {"fd_step", c.fd_step},
          {"newton_tol", c.newton_tol},
          {"newton_iters", c.newton_iters}};
}

RunConfig from_json(const json& j) {
  RunConfig c;
  read(j, "command", c.command);
  read(j, "in", c.in);
  read(j, "out", c.out);
  read(j, "seed", c.seed);
  read(j, "workers", c.workers);
  read(j, "nodes", c.nodes);
  read(j, "degree", c.degree);
  read(j, "p", c.p);
  read_opt(j, "target", c.target);
  read_opt(j, "cc_target", c.cc_target);
  read_opt(j, "apl_target", c.apl_target);
  read(j, "tol_apl", c.tol_apl);
  read(j, "tol_cc", c.tol_cc);
  if (j.contains("anneal_apl")) c.anneal_apl = anneal_from(j.at("anneal_apl"));
  if (j.contains("anneal_cc")) c.anneal_cc = anneal_from(j.at("anneal_cc"));
  read(j, "max_rounds", c.max_rounds);
  read(j, "tau_i", c.tau_i);
  read(j, "tau_r", c.tau_r);
  read(j, "init_infected", c.init_infected);
  read(j, "init_recovered", c.init_recovered);
  read(j, "steps", c.steps);
  read_opt(j, "burn_in", c.burn_in);
  read(j, "window", c.window);
  read(j, "hop", c.hop);
  read(j, "peak_ratio", c.peak_ratio);
  read(j, "min_amplitude", c.min_amplitude);
  read(j, "axis", c.axis);
  read_opt(j, "fixed", c.fixed);
  read(j, "targets", c.targets);
  read(j, "replicas", c.replicas);
  read(j, "fixed_point", c.fixed_point);
  read(j, "horizon", c.horizon);
  read(j, "healing", c.healing);
  read(j, "coarse_replicas", c.coarse_replicas);
  read(j, "fd_step", c.fd_step);
  read(j, "newton_tol", c.newton_tol);
  read(j, "newton_iters", c.newton_iters);
  return c;
}

std::vector<std::string> to_args(const RunConfig& c) {
  std::vector<std::string> a{c.command};
  auto add = [&](const std::string& flag, const std::string& value) {
    a.push_back(flag);
    a.push_back(value);
  };
  auto num = [](auto v) { return std::to_string(v); };
  auto anneal = [&](const AnnealOptions& o, const std::string& prefix) {
    if (o.t0) add("--" + prefix + "t0", format_double(*o.t0));
    add("--" + prefix + "cooling", format_double(o.cooling));
    add("--" + prefix + "epoch", num(o.epoch_len));
    add("--" + prefix + "max-iters", num(o.max_iters));
    add("--" + prefix + "stall-iters", num(o.stall_iters));
    if (prefix == "apl-") add("--apl-sources", num(o.apl_sources));
  };
  auto tuning = [&] {
    add("--tol-apl", format_double(c.tol_apl));
    add("--tol-cc", format_double(c.tol_cc));
    anneal(c.anneal_apl, "apl-");
    anneal(c.anneal_cc, "cc-");
    add("--max-rounds", num(c.max_rounds));
  };
  auto epidemic = [&] {
    add("--tau-i", num(c.tau_i));
    add("--tau-r", num(c.tau_r));
    add("--init-infected", format_double(c.init_infected));
    add("--init-recovered", format_double(c.init_recovered));
    add("--steps", num(c.steps));
    if (c.burn_in) add("--burn-in", num(*c.burn_in));
    add("--window", num(c.window));
    add("--hop", num(c.hop));
    add("--peak-ratio", format_double(c.peak_ratio));
    add("--min-amplitude", format_double(c.min_amplitude));
  };

  add("--seed", num(c.seed));
  add("--workers", num(c.workers));
  if (!c.in.empty()) add("--in", c.in);
  if (!c.out.empty()) add("--out", c.out);
  if (c.command == "generate") {
    add("--nodes", num(c.nodes));
    add("--degree", num(c.degree));
    add("--p", format_double(c.p));
  } else if (c.command == "tune-apl" || c.command == "tune-cc") {
    if (c.target) add("--target", format_double(*c.target));
    tuning();
  } else if (c.command == "tune-joint") {
    if (c.cc_target) add("--cc", format_double(*c.cc_target));
    if (c.apl_target) add("--apl", format_double(*c.apl_target));
    tuning();
  } else if (c.command == "simulate") {
    epidemic();
  } else if (c.command == "sweep") {
    add("--axis", c.axis);
    if (c.fixed) add("--fixed", format_double(*c.fixed));
    a.push_back("--targets");
    for (double t : c.targets) a.push_back(format_double(t));
    tuning();
    epidemic();
    add("--replicas", num(c.replicas));
    if (!c.fixed_point) a.push_back("--no-fixed-point");
    add("--horizon", num(c.horizon));
    add("--healing", num(c.healing));
    add("--coarse-replicas", num(c.coarse_replicas));
    add("--fd-step", format_double(c.fd_step));
    add("--newton-tol", format_double(c.newton_tol));
    add("--newton-iters", num(c.newton_iters));
  }
  return a;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Small-world network tuning and SIRS epidemic analysis", "swnet"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Watts-Strogatz graph to an edge list");
  add_common(gen, cfg);
  gen->add_option("--nodes", cfg.nodes, "Node count")->capture_default_str();
  gen->add_option("--degree", cfg.degree, "Even mean degree")->capture_default_str();
  gen->add_option("--p", cfg.p, "Rewiring probability")->capture_default_str();
  add_out(gen, cfg, "Output edge list");

  auto* stats = app.add_subcommand("stats", "Path length, clustering and connectivity");
  add_common(stats, cfg);
  add_in(stats, cfg);
  stats->add_option("--out", cfg.out, "Write the metrics JSON here");

  for (const char* name : {"tune-apl", "tune-cc"}) {
    auto* sub = app.add_subcommand(name, std::string("Anneal toward a target ") +
                                             (name[5] == 'a' ? "path length" : "clustering"));
    add_common(sub, cfg);
    add_in(sub, cfg);
    add_out(sub, cfg, "Tuned edge list");
    sub->add_option("--target", cfg.target, "Target value")->required();
    add_tuning(sub, cfg);
  }

  auto* joint = app.add_subcommand("tune-joint", "Anneal toward a clustering and path-length pair");
  add_common(joint, cfg);
  add_in(joint, cfg);
  add_out(joint, cfg, "Tuned edge list");
  joint->add_option("--cc", cfg.cc_target, "Target clustering coefficient")->required();
  joint->add_option("--apl", cfg.apl_target, "Target average path length")->required();
  add_tuning(joint, cfg);

  auto* sim = app.add_subcommand("simulate", "SIRS time series on a graph");
  add_common(sim, cfg);
  add_in(sim, cfg);
  add_out(sim, cfg, "Density CSV");
  add_epidemic(sim, cfg);

  auto* sweep = app.add_subcommand("sweep", "Bifurcation sweep along one metric");
  add_common(sweep, cfg);
  add_in(sweep, cfg);
  add_out(sweep, cfg, "Sweep CSV");
  sweep->add_option("--axis", cfg.axis, "apl or cc")->capture_default_str();
  sweep->add_option("--fixed", cfg.fixed, "Value held on the other metric")->required();
  auto* targets = sweep->add_option("--targets", cfg.targets, "Explicit sorted targets");
  std::optional<double> from, to, step;
  auto* from_opt = sweep->add_option("--from", from, "First target")->excludes(targets);
  sweep->add_option("--to", to, "Last target")->needs(from_opt);
  sweep->add_option("--step", step, "Target spacing")->needs(from_opt);
  sweep->add_option("--replicas", cfg.replicas, "Simulations per point")->capture_default_str();
  sweep->add_flag("!--no-fixed-point", cfg.fixed_point, "Skip the coarse fixed point");
  sweep->add_option("--horizon", cfg.horizon, "Coarse time-stepper horizon")
      ->capture_default_str();
  sweep->add_option("--healing", cfg.healing, "Steps run after each lift")
      ->capture_default_str();
  sweep->add_option("--coarse-replicas", cfg.coarse_replicas, "Coarse time-stepper replicas")
      ->capture_default_str();
  sweep->add_option("--fd-step", cfg.fd_step, "Finite-difference step")->capture_default_str();
  sweep->add_option("--newton-tol", cfg.newton_tol, "Newton residual tolerance")
      ->capture_default_str();
  sweep->add_option("--newton-iters", cfg.newton_iters, "Newton iteration limit")
      ->capture_default_str();
  add_tuning(sweep, cfg);
  add_epidemic(sweep, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }
  if (cfg.command == "sweep" && from) {
    if (!to || !step || !(*step > 0.0) || *to < *from) {
      throw UsageError("--from needs --to >= --from and a positive --step");
    }
    const auto count = static_cast<long>(std::floor((*to - *from) / *step + 1e-9));
    for (long k = 0; k <= count; ++k) {
      cfg.targets.push_back(std::round((*from + static_cast<double>(k) * *step) * 1e9) / 1e9);
    }
  }
  validate(cfg);
  return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  if (cfg.command == "generate") {
    o = run_generate(cfg, out);
  } else if (cfg.command == "stats") {
    o = run_stats(cfg, out);
  } else if (cfg.command == "simulate") {
    o = run_simulate(cfg, out);
  } else if (cfg.command == "sweep") {
    o = run_sweep(cfg, out);
  } else {
    o = run_tune(cfg, out);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!cfg.out.empty()) {
    write_json(cfg.out + ".json",
               {{"config", to_json(cfg)},
                {"seeds", o.seeds},
                {"metrics", o.metrics},
                {"status", o.status},
                {"wall_time_s", std::stod(fixed6(wall))}});
  }
  return o.status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FileNotFound& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotFound;
  }
  if (!cfg) return kExitOk;
  try {
    return execute(*cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace swnet::cli
