#include "swnet/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "swnet/errors.hpp"
#include "swnet/parallel.hpp"

namespace swnet {

std::string to_string(SweepAxis axis) { return axis == SweepAxis::Apl ? "apl" : "cc"; }

SweepAxis parse_axis(const std::string& text) {
  if (text == "apl") return SweepAxis::Apl;
  if (text == "cc") return SweepAxis::Cc;
  throw InvalidParams("sweep axis must be 'apl' or 'cc', got '" + text + "'");
}

EnsembleSummary simulate_ensemble(const Graph& g, const EpidemicParams& params,
                                  const EnsembleConfig& cfg, std::uint64_t seed) {
  if (cfg.replicas < 1) throw InvalidParams("ensemble needs at least one replica");
  const auto replicas = static_cast<std::size_t>(cfg.replicas);
  std::vector<RegimeReport> reports(replicas);
  std::vector<double> mean_r(replicas);
  parallel_for(replicas, cfg.workers, [&](std::size_t r) {
    RandomStream rng(derive_seed(seed, "ensemble", r));
    const DensitySeries series = run(g, params, cfg.steps, rng);
    reports[r] = classify_regime(series, cfg.burn_in, cfg.regime);
    double sum = 0.0;
    for (std::size_t t = static_cast<std::size_t>(cfg.burn_in); t < series.size(); ++t) {
      sum += static_cast<double>(series[t].r) / static_cast<double>(g.num_nodes());
    }
    mean_r[r] = sum / static_cast<double>(series.size() - static_cast<std::size_t>(cfg.burn_in));
  });

  EnsembleSummary out;
  std::array<std::size_t, 3> votes{};
  std::vector<double> periods;
  for (std::size_t r = 0; r < replicas; ++r) {
    const RegimeReport& rep = reports[r];
    out.mean_i += rep.mean_rho_i;
    out.mean_r += rep.regime == Regime::Extinct ? 0.0 : mean_r[r];
    out.amplitude_mean += rep.amplitude_mean;
    out.amplitude_max = std::max(out.amplitude_max, rep.amplitude_max);
    ++votes[static_cast<std::size_t>(rep.regime)];
    if (rep.dominant_period) periods.push_back(*rep.dominant_period);
  }
  out.mean_i /= static_cast<double>(replicas);
  out.mean_r /= static_cast<double>(replicas);
  out.amplitude_mean /= static_cast<double>(replicas);
  // Majority verdict; ties resolve in enum order.
  out.regime = static_cast<Regime>(std::max_element(votes.begin(), votes.end()) - votes.begin());
  if (!periods.empty()) {
    std::sort(periods.begin(), periods.end());
    const std::size_t mid = periods.size() / 2;
    out.dominant_period = periods.size() % 2 ? periods[mid]
                                             : 0.5 * (periods[mid - 1] + periods[mid]);
  }
  out.replicas = std::move(reports);
  return out;
}

std::vector<SweepPoint> bifurcation_sweep(const Graph& base, SweepAxis axis, double fixed_value,
                                          std::span<const double> targets,
                                          const EpidemicParams& epidemic,
                                          const SweepConfig& cfg, RandomStream& rng) {
  epidemic.validate();
  if (!std::is_sorted(targets.begin(), targets.end())) {
    throw InvalidParams("sweep targets must be sorted");
  }
  if (!is_connected(base)) throw DisconnectedGraph("sweep base graph is not connected");

  const std::uint64_t master = rng.next_seed();
  std::vector<SweepPoint> points;
  points.reserve(targets.size());
  Graph current = base;
  for (std::size_t p = 0; p < targets.size(); ++p) {
    SweepPoint point;
    point.axis = axis;
    point.target = targets[p];
    point.seed = derive_seed(master, "sweep-point", p);

    const double cc_target = axis == SweepAxis::Cc ? targets[p] : fixed_value;
    const double apl_target = axis == SweepAxis::Apl ? targets[p] : fixed_value;
    RandomStream tune_rng(derive_seed(point.seed, "tune"));
    JointResult tuned = tune_joint(current, cc_target, apl_target, cfg.tuning, tune_rng);
    point.tuning = tuned.status;
    point.achieved_apl = tuned.apl;
    point.achieved_cc = tuned.cc;
    current = std::move(tuned.graph);

    point.ensemble =
        simulate_ensemble(current, epidemic, cfg.ensemble, derive_seed(point.seed, "simulate"));
    if (cfg.fixed_point) {
      RandomStream newton_rng(derive_seed(point.seed, "newton"));
      const CoarseState guess = project({point.ensemble.mean_i, point.ensemble.mean_r});
      point.fixed_point = coarse_fixed_point(guess, current, epidemic, cfg.newton, newton_rng);
    }
    points.push_back(std::move(point));
  }
  return points;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "axis,target,achieved_apl,achieved_cc,mean_I,amplitude_mean,amplitude_max,"
         "dominant_period,regime,fp_rho_I,fp_residual,fp_max_multiplier,fp_stable,seed\n";
  char buf[96];
  auto fixed6 = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  for (const SweepPoint& p : points) {
    out << to_string(p.axis) << ',' << fixed6(p.target) << ',' << fixed6(p.achieved_apl) << ','
        << fixed6(p.achieved_cc) << ',' << fixed6(p.ensemble.mean_i) << ','
        << fixed6(p.ensemble.amplitude_mean) << ',' << fixed6(p.ensemble.amplitude_max) << ','
        << (p.ensemble.dominant_period ? fixed6(*p.ensemble.dominant_period) : std::string())
        << ',' << to_string(p.ensemble.regime) << ',';
    if (p.fixed_point) {
      out << fixed6(p.fixed_point->state.rho_i) << ',' << fixed6(p.fixed_point->residual) << ','
          << fixed6(p.fixed_point->max_multiplier()) << ','
          << (p.fixed_point->stable ? "true" : "false");
    } else {
      out << ",,,";
    }
    out << ',' << p.seed << '\n';
  }
}

}  // namespace swnet
