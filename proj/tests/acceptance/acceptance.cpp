// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit status
// is non-zero if any selected criterion fails.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/statistics/bivariate_statistics.hpp>

#include "CLI11.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "swnet/epidemic.hpp"
#include "swnet/generator.hpp"
#include "swnet/graph.hpp"
#include "swnet/spectral.hpp"
#include "swnet/sweep.hpp"
#include "swnet/tuner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace swnet;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Context {
  std::string bin;
  fs::path workdir;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int shell(const std::string& cmd, const fs::path& log) {
  const int raw = std::system((cmd + " > '" + log.string() + "' 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j) + 1.0;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return boost::math::statistics::correlation_coefficient(ranks(x), ranks(y));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// --- 1 ------------------------------------------------------------------------

Verdict metric_oracles(const Context&) {
  RandomStream rng(2024);
  double worst_apl = 0.0, worst_cc = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Node n = static_cast<Node>(rng.between(2, 50));
    const Graph g = oracle::random_connected(n, rng.uniform() * 0.4, rng);
    worst_apl = std::max(worst_apl, std::abs(average_path_length(g).apl - *oracle::apl(g)));
    worst_cc = std::max(worst_cc, std::abs(transitivity(g).cc - oracle::cc(g)));
  }
  return {worst_apl <= 1e-12 && worst_cc <= 1e-12,
          "200 graphs, max |dAPL| " + fmt("%.3g", worst_apl) + ", max |dCC| " +
              fmt("%.3g", worst_cc)};
}

// --- 2 ------------------------------------------------------------------------

bool simple_graph(const Graph& g) {
  for (Node v = 0; v < g.num_nodes(); ++v) {
    std::vector<Node> nb(g.neighbors(v).begin(), g.neighbors(v).end());
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
    for (Node u : nb) {
      if (u == v || !g.has_edge(u, v)) return false;
    }
  }
  return true;
}

Verdict move_invariants(const Context&) {
  // The kinds are interleaved so that increases replenish the triangles that
  // decreases consume.
  constexpr std::size_t kMoves = 10'000;
  const std::array<MoveKind, 3> kinds{MoveKind::AplSwap, MoveKind::CcDecrease,
                                      MoveKind::CcIncrease};
  std::string detail;
  bool ok = true;
  for (double p : {0.1, 0.3}) {
    Graph g = watts_strogatz({1000, 6, p, 7});
    const std::vector<std::size_t> degrees = degree_sequence(g);
    RandomStream rng(derive_seed(11, "moves", static_cast<std::uint64_t>(p * 100)));
    std::array<std::size_t, 3> accepted{}, failures{};
    std::size_t rounds = 0;
    while (*std::min_element(accepted.begin(), accepted.end()) < kMoves && rounds < 20 * kMoves) {
      ++rounds;
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        std::optional<RewireMove> m;
        switch (kinds[k]) {
          case MoveKind::AplSwap: m = propose_apl_move(g, rng); break;
          case MoveKind::CcDecrease: m = propose_cc_decrease_move(g, rng); break;
          case MoveKind::CcIncrease: m = propose_cc_increase_move(g, rng); break;
        }
        if (!m) continue;
        const double cc_before = transitivity(g).cc;
        apply_move_inplace(g, *m);
        if (!is_connected(g)) {  // rejected, as the tuner would
          apply_move_inplace(g, m->inverse());
          continue;
        }
        ++accepted[k];
        bool good = degree_sequence(g) == degrees && simple_graph(g);
        if (kinds[k] == MoveKind::AplSwap) {
          good = good && std::abs(transitivity(g).cc - cc_before) <= 1e-12;
        }
        failures[k] += !good;
      }
    }
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      ok = ok && failures[k] == 0 && accepted[k] >= kMoves;
      detail += to_string(kinds[k]) + "@p=" + fmt("%.1f", p) + " " +
                std::to_string(accepted[k]) + " moves/" + std::to_string(failures[k]) +
                " violations; ";
    }
  }
  return {ok, detail};
}

// --- 3 ------------------------------------------------------------------------

// A target pair realised by some degree-preserving rewiring of `start`, so
// it is feasible by construction.
std::pair<double, double> feasible_target(const Graph& start, RandomStream& rng) {
  const double cc0 = transitivity(start).cc, apl0 = average_path_length(start).apl;
  for (;;) {
    Graph g = start;
    const auto inc = rng.between(0, 1500), dec = rng.between(0, 1500), apl = rng.between(0, 400);
    auto walk = [&](std::int64_t count, auto propose) {
      for (std::int64_t k = 0; k < count; ++k) {
        const auto m = propose(g);
        if (!m) continue;
        apply_move_inplace(g, *m);
        if (!is_connected(g)) apply_move_inplace(g, m->inverse());
      }
    };
    walk(dec, [&](const Graph& h) { return propose_cc_decrease_move(h, rng); });
    walk(inc, [&](const Graph& h) { return propose_cc_increase_move(h, rng); });
    walk(apl, [&](const Graph& h) {
      return rng.uniform() < 0.5 ? propose_apl_move(h, rng) : propose_local_apl_move(h, rng);
    });
    const double cc = transitivity(g).cc, pl = average_path_length(g).apl;
    if (std::abs(cc - cc0) <= 0.2 * cc0 && std::abs(pl - apl0) <= 0.2 * apl0 &&
        (std::abs(cc - cc0) > 0.005 || std::abs(pl - apl0) > 0.05)) {
      return {cc, pl};
    }
  }
}

Verdict tuner_convergence(const Context& ctx) {
  const fs::path dir = ctx.workdir / "c3";
  fs::create_directories(dir);
  const std::string base = (dir / "ws.txt").string();
  if (shell(ctx.bin + " generate --nodes 1000 --degree 6 --p 0.2 --seed 1 --out " + base,
            dir / "generate.log") != 0) {
    return {false, "generate failed"};
  }
  const Graph start = load_edge_list(base);
  int hits = 0;
  std::string detail;
  for (int seed = 1; seed <= 10; ++seed) {
    RandomStream rng(derive_seed(3, "target", static_cast<std::uint64_t>(seed)));
    const auto [cc, apl] = feasible_target(start, rng);
    const std::string out = (dir / ("tuned" + std::to_string(seed) + ".txt")).string();
    shell(ctx.bin + " tune-joint --in " + base + " --out " + out + " --cc " + fmt("%.6f", cc) +
              " --apl " + fmt("%.6f", apl) + " --seed " + std::to_string(seed),
          dir / ("tune" + std::to_string(seed) + ".log"));
    bool hit = false;
    if (fs::exists(out)) {
      const Graph g = load_edge_list(out);
      hit = std::abs(transitivity(g).cc - cc) <= 0.005 &&
            std::abs(average_path_length(g).apl - apl) <= 0.05;
    }
    hits += hit;
    detail += "(" + fmt("%.4f", cc) + "," + fmt("%.3f", apl) + (hit ? ")ok " : ")miss ");
  }
  return {hits >= 9, std::to_string(hits) + "/10 seeds converged: " + detail};
}

// --- 4 ------------------------------------------------------------------------

Verdict metropolis_statistics(const Context&) {
  RandomStream rng(4);
  constexpr int kDraws = 100'000;
  double worst = 0.0;
  for (double delta : {0.25, 0.5, 1.0}) {
    for (double t : {0.25, 0.5, 1.0}) {
      int accepted = 0;
      for (int k = 0; k < kDraws; ++k) accepted += metropolis_accept(delta, t, rng);
      const double p = std::exp(-delta / t);
      const double sigma = std::sqrt(p * (1.0 - p) / kDraws);
      worst = std::max(worst, std::abs(static_cast<double>(accepted) / kDraws - p) / sigma);
    }
  }
  return {worst <= 3.0, "worst deviation " + fmt("%.2f", worst) + " sigma over 9 cells"};
}

// --- 5 ------------------------------------------------------------------------

Verdict epidemic_exactness(const Context&) {
  std::vector<std::pair<std::string, Graph>> family;
  for (Node n = 3; n <= 10; ++n) {
    Graph path(n), cycle(n), star(n);
    for (Node v = 0; v + 1 < n; ++v) {
      path.add_edge(v, v + 1);
      cycle.add_edge(v, v + 1);
      star.add_edge(0, v + 1);
    }
    cycle.add_edge(0, n - 1);
    family.emplace_back("P" + std::to_string(n), std::move(path));
    family.emplace_back("C" + std::to_string(n), std::move(cycle));
    family.emplace_back("S" + std::to_string(n), std::move(star));
  }
  Graph k4(4);
  for (Node u = 0; u < 4; ++u)
    for (Node v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  family.emplace_back("K4", std::move(k4));

  const EpidemicParams params{.tau_i = 3, .tau_r = 2};
  RandomStream rng(5);
  double min_p = 1.0;
  std::string worst;
  bool conserved = true;
  for (const auto& [name, g] : family) {
    const auto n = static_cast<std::size_t>(g.num_nodes());
    // A mixed start: infected nodes of every age, one recovered node.
    EpidemicState start;
    start.nodes.resize(n);
    for (std::size_t v = 0; v < n; v += 2) {
      start.nodes[v] = {Phase::Infected, static_cast<std::uint16_t>(1 + (v / 2) % params.tau_i)};
    }
    start.nodes[n - 1] = {Phase::Recovered, 1};
    const std::vector<double> exact = oracle::one_step_infected(g, start, params);
    std::vector<std::size_t> counts(n + 1, 0);
    for (int run = 0; run < 100'000; ++run) {
      EpidemicState s = start;
      step(s, g, params, rng);
      const DensityRecord r = measure(s);
      conserved = conserved && r.s + r.i + r.r == n;
      ++counts[static_cast<std::size_t>(r.i)];
    }
    const double p = oracle::chi_squared_pvalue(counts, exact);
    if (p < min_p) {
      min_p = p;
      worst = name;
    }
    for (int run = 0; run < 200; ++run) {
      const DensitySeries series = swnet::run(g, EpidemicParams{.init_infected_frac = 0.5}, 50, rng);
      for (const DensityRecord& r : series) {
        conserved = conserved && r.s + r.i + r.r == n;
      }
    }
  }
  return {min_p > 0.001 && conserved,
          std::to_string(family.size()) + " graphs, smallest chi-squared p " + fmt("%.4f", min_p) +
              " (" + worst + "), conservation " + (conserved ? "exact" : "violated")};
}

// --- 6 ------------------------------------------------------------------------

Verdict p_transition(const Context&) {
  const std::vector<double> ps{0.01, 0.05, 0.1, 0.2, 0.4, 0.9};
  const EpidemicParams params{.tau_i = 4, .tau_r = 9};
  std::vector<double> medians;
  std::map<double, std::vector<Regime>> regimes;
  std::string detail;
  for (double p : ps) {
    std::vector<double> amps;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const Graph g = watts_strogatz({10000, 6, p, seed});
      RandomStream rng(derive_seed(seed, "simulate"));
      const DensitySeries series = run(g, params, 2000, rng);
      const RegimeReport r = classify_regime(series, 1000, RegimeConfig{});
      amps.push_back(r.amplitude_mean);
      regimes[p].push_back(r.regime);
    }
    medians.push_back(median(amps));
    detail += "p=" + fmt("%g", p) + ":" + fmt("%.3f", medians.back()) + " ";
  }
  auto majority = [&](double p, Regime want) {
    const auto& v = regimes[p];
    return std::count(v.begin(), v.end(), want) * 2 > static_cast<long>(v.size());
  };
  const double rho = spearman(ps, medians);
  const bool ok = majority(0.01, Regime::Stationary) && majority(0.9, Regime::Oscillatory) &&
                  rho > 0.8;
  return {ok, "median amplitudes " + detail + "Spearman " + fmt("%.3f", rho)};
}

// --- 7, 8 ---------------------------------------------------------------------

struct Row {
  double target, apl, cc, amplitude;
  std::string regime;
  double fp_rho_i = NAN, mean_i;
  bool has_fp = false, fp_stable = false;
  double fp_max = NAN;
};

std::vector<Row> read_sweep(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    while (f.size() < 14) f.emplace_back();
    Row r{};
    r.target = std::stod(f[1]);
    r.apl = std::stod(f[2]);
    r.cc = std::stod(f[3]);
    r.mean_i = std::stod(f[4]);
    r.amplitude = std::stod(f[5]);
    r.regime = f[8];
    r.has_fp = !f[9].empty();
    if (r.has_fp) {
      r.fp_rho_i = std::stod(f[9]);
      r.fp_max = std::stod(f[11]);
      r.fp_stable = f[12] == "true";
    }
    rows.push_back(r);
  }
  return rows;
}

// Best single threshold separating Stationary from Oscillatory along x, in
// either direction: returns (threshold, misclassified, oscillatory above).
struct StepFit {
  double threshold = NAN;
  int errors = 0;
  bool rising = true;
};

StepFit fit_step(std::vector<std::pair<double, std::string>> pts) {
  std::sort(pts.begin(), pts.end());
  StepFit best;
  best.errors = static_cast<int>(pts.size()) + 1;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    for (bool rising : {true, false}) {
      int errors = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool osc = (i >= k) == rising;
        errors += (pts[i].second == "oscillatory") != osc;
      }
      if (errors < best.errors) best = {0.5 * (pts[k - 1].first + pts[k].first), errors, rising};
    }
  }
  return best;
}

Verdict run_sweep(const Context& ctx, const std::string& name, const std::string& axis,
                  double fixed, double from, double to, double step, double base_p,
                  double window_lo, double window_hi, bool need_rising) {
  const fs::path dir = ctx.workdir / name;
  fs::create_directories(dir);
  const std::string base = (dir / "base.txt").string();
  const std::string csv = (dir / "sweep.csv").string();
  if (shell(ctx.bin + " generate --nodes 10000 --degree 6 --p " + fmt("%g", base_p) +
                " --seed 1 --out " + base,
            dir / "generate.log") != 0) {
    return {false, "generate failed"};
  }
  const int code = shell(ctx.bin + " sweep --in " + base + " --out " + csv + " --axis " + axis +
                             " --fixed " + fmt("%g", fixed) + " --from " + fmt("%g", from) +
                             " --to " + fmt("%g", to) + " --step " + fmt("%g", step) +
                             " --seed 1",
                         dir / "sweep.log");
  if (code != 0 || !fs::exists(csv)) return {false, "sweep exited with " + std::to_string(code)};

  const bool apl_axis = axis == "apl";
  const double fixed_tol = apl_axis ? 0.005 : 0.05;
  std::vector<std::pair<double, std::string>> pts;
  std::vector<double> xs, amps;
  std::string detail;
  for (const Row& r : read_sweep(csv)) {
    const double x = apl_axis ? r.apl : r.cc;
    const double held = apl_axis ? r.cc : r.apl;
    detail += fmt("%.3f", x) + ":" + r.regime.substr(0, 3) + "/" + fmt("%.3f", r.amplitude) +
              (std::abs(held - fixed) <= fixed_tol ? " " : "(off) ");
    if (std::abs(held - fixed) > fixed_tol || r.regime == "extinct") continue;
    pts.emplace_back(x, r.regime);
    xs.push_back(x);
    amps.push_back(r.amplitude);
  }
  const StepFit fit = fit_step(pts);
  const bool both = std::any_of(pts.begin(), pts.end(), [](auto& p) { return p.second == "oscillatory"; }) &&
                    std::any_of(pts.begin(), pts.end(), [](auto& p) { return p.second == "stationary"; });
  const double rho = xs.size() > 2 ? spearman(xs, amps) : 0.0;
  const bool monotone = !need_rising || rho > 0.8;
  const bool ok = both && fit.threshold >= window_lo && fit.threshold <= window_hi &&
                  (!need_rising || fit.rising) && monotone;
  return {ok, "transition at " + fmt("%.3f", fit.threshold) + (fit.rising ? " (rising" : " (falling") +
                  ", " + std::to_string(fit.errors) + " off-step), amplitude Spearman " +
                  fmt("%.3f", rho) + "; points " + detail};
}

Verdict apl_window(const Context& ctx) {
  return run_sweep(ctx, "c7", "apl", 0.2615, 6.0, 8.5, 0.25, 0.25, 6.5, 8.0, true);
}

Verdict cc_window(const Context& ctx) {
  return run_sweep(ctx, "c8", "cc", 6.85, 0.20, 0.36, 0.02, 0.2, 0.24, 0.34, false);
}

// --- 9 ------------------------------------------------------------------------

Verdict coarse_consistency(const Context&) {
  const EpidemicParams params{.tau_i = 4, .tau_r = 9};
  SweepConfig cfg;
  cfg.ensemble.steps = 5000;
  cfg.ensemble.burn_in = 2500;
  int stationary = 0, oscillatory = 0;
  bool ok = true;
  std::string detail;
  for (double p : {0.01, 0.05, 0.1, 0.3, 0.4, 0.9}) {
    const Graph g = watts_strogatz({10000, 6, p, 1});
    const std::vector<double> here{average_path_length(g).apl};
    RandomStream rng(derive_seed(9, "point", static_cast<std::uint64_t>(p * 100)));
    const SweepPoint pt =
        bifurcation_sweep(g, SweepAxis::Apl, transitivity(g).cc, here, params, cfg, rng).front();
    if (!pt.fixed_point) return {false, "sweep point without a fixed point"};
    const CoarseFixedPoint fp = pt.fixed_point.value();
    detail += "p=" + fmt("%g", p) + " " + to_string(pt.ensemble.regime) + " fp " +
              fmt("%.4f", fp.state.rho_i) + " mean " + fmt("%.4f", pt.ensemble.mean_i) +
              " |l|max " + fmt("%.3f", fp.max_multiplier()) + "; ";
    if (pt.ensemble.regime == Regime::Stationary) {
      ++stationary;
      ok = ok && std::abs(fp.state.rho_i - pt.ensemble.mean_i) <= 0.02 && fp.stable;
    } else if (pt.ensemble.regime == Regime::Oscillatory) {
      ++oscillatory;
      ok = ok && fp.max_multiplier() > 1.0;
    }
  }
  return {ok && stationary >= 3 && oscillatory >= 3, detail};
}

// --- 10 -----------------------------------------------------------------------

Verdict determinism(const Context& ctx) {
  const fs::path dir = ctx.workdir / "c10";
  fs::remove_all(dir);
  const std::vector<std::pair<std::string, std::string>> runs{
      {"run1", ""}, {"run2", ""}, {"workers4", " --workers 4"}};
  const fs::path seed_graph = dir / "input.txt";
  fs::create_directories(dir);
  if (shell(ctx.bin + " generate --nodes 1000 --p 0.2 --seed 5 --out " + seed_graph.string(),
            dir / "input.log") != 0) {
    return {false, "generate failed"};
  }
  const std::string in = " --in " + seed_graph.string();
  const std::vector<std::pair<std::string, std::string>> commands{
      {"generate", "generate --nodes 1000 --p 0.2 --seed 3 --out @/g.txt"},
      {"stats", "stats" + in + " --out @/stats.json"},
      {"tune-apl", "tune-apl" + in + " --target 5.3 --seed 4 --out @/apl.txt"},
      {"tune-cc", "tune-cc" + in + " --target 0.33 --seed 4 --out @/cc.txt"},
      {"tune-joint", "tune-joint" + in + " --cc 0.33 --apl 5.3 --seed 4 --out @/joint.txt"},
      {"simulate", "simulate" + in + " --steps 800 --seed 6 --out @/rho.csv"},
      {"sweep", "sweep" + in + " --axis cc --fixed 5.3 --targets 0.3 0.33 --replicas 2 "
                "--steps 600 --coarse-replicas 8 --newton-iters 3 --seed 7 --out @/sweep.csv"}};
  for (const auto& [run, extra] : runs) {
    fs::create_directories(dir / run);
    for (const auto& [name, cmd] : commands) {
      std::string line = cmd;
      line.replace(line.find('@'), 1, (dir / run).string());
      shell(ctx.bin + " " + line + extra, dir / run / (name + ".log"));
    }
  }
  // The sidecar records the flags and the wall time, which legitimately
  // differ; everything else must match.
  auto normalise = [](const fs::path& p) {
    if (p.extension() != ".json" || p.filename().string().find(".trace.") != std::string::npos) {
      return slurp(p);
    }
    json j = json::parse(slurp(p));
    if (j.contains("wall_time_s")) {
      j.erase("wall_time_s");
      j["config"].erase("out");
      j["config"].erase("workers");
    }
    return j.dump();
  };
  std::size_t compared = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::directory_iterator(dir / "run1")) {
    if (entry.path().extension() == ".log") continue;
    const std::string name = entry.path().filename().string();
    const std::string ref = normalise(entry.path());
    for (const char* other : {"run2", "workers4"}) {
      ++compared;
      const fs::path p = dir / other / name;
      if (!fs::exists(p) || normalise(p) != ref) differing.push_back(std::string(other) + "/" + name);
    }
  }
  std::size_t outputs = 0;
  for (const auto& entry : fs::directory_iterator(dir / "run1")) {
    outputs += entry.path().extension() != ".log";
  }
  std::string detail = std::to_string(outputs) + " output files, " + std::to_string(compared) +
                       " comparisons";
  for (const std::string& d : differing) detail += ", differs: " + d;
  return {differing.empty() && outputs >= 7 * 2, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance suite");
  std::vector<int> selected;
  Context ctx;
  std::string workdir = "acceptance_work";
  app.add_option("--criterion", selected, "Criteria to run (default all)")->check(CLI::Range(1, 10));
  app.add_option("--bin", ctx.bin, "Path to the swnet executable")->required();
  app.add_option("--workdir", workdir, "Scratch directory");
  CLI11_PARSE(app, argc, argv);
  ctx.workdir = fs::absolute(workdir);
  fs::create_directories(ctx.workdir);
  if (selected.empty()) {
    selected.resize(10);
    std::iota(selected.begin(), selected.end(), 1);
  }

  struct Criterion {
    const char* title;
    double budget_s;
    std::function<Verdict(const Context&)> check;
  };
  const std::map<int, Criterion> criteria{
      {1, {"metric oracles", 60, metric_oracles}},
      {2, {"move invariants", 600, move_invariants}},
      {3, {"tuner convergence", 1800, tuner_convergence}},
      {4, {"metropolis statistics", 60, metropolis_statistics}},
      {5, {"epidemic exactness", 300, epidemic_exactness}},
      {6, {"regime transition in p", 7200, p_transition}},
      {7, {"APL sweep window", 43200, apl_window}},
      {8, {"CC sweep window", 43200, cc_window}},
      {9, {"coarse-analysis consistency", 7200, coarse_consistency}},
      {10, {"determinism", 600, determinism}},
  };
  int failures = 0;
  for (int id : selected) {
    const auto& [title, budget, check] = criteria.at(id);
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check(ctx);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget) {
      v.pass = false;
      v.detail += " (over the " + fmt("%.0f", budget) + " s budget)";
    }
    std::cout << "criterion " << id << " (" << title << "): " << (v.pass ? "PASS" : "FAIL") << " ["
              << fmt("%.1f", secs) << " s] " << v.detail << std::endl;
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
