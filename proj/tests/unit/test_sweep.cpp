#include "doctest.h"

#include <sstream>

#include "swnet/errors.hpp"
#include "swnet/generator.hpp"
#include "swnet/sweep.hpp"

using namespace swnet;

namespace {

std::string csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  write_sweep_csv(out, points);
  return out.str();
}

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.ensemble.replicas = 2;
  cfg.ensemble.steps = 600;
  cfg.ensemble.burn_in = 300;
  cfg.newton.step.replicas = 4;
  cfg.newton.step.horizon = 10;
  cfg.newton.max_iters = 3;
  return cfg;
}

}  // namespace

TEST_CASE("axis names") {
  CHECK(to_string(SweepAxis::Apl) == "apl");
  CHECK(parse_axis("cc") == SweepAxis::Cc);
  CHECK_THROWS_AS(parse_axis("diameter"), InvalidParams);
}

TEST_CASE("ensemble summary") {
  const Graph g = watts_strogatz({1000, 6, 0.2, 1});
  EnsembleConfig cfg{.replicas = 3, .steps = 800, .burn_in = 400};
  const EnsembleSummary s = simulate_ensemble(g, EpidemicParams{}, cfg, 5);
  REQUIRE(s.replicas.size() == 3);
  double mean = 0.0;
  for (const RegimeReport& r : s.replicas) mean += r.mean_rho_i;
  CHECK(s.mean_i == doctest::Approx(mean / 3.0));
  CHECK(s.mean_i + s.mean_r <= 1.0);
  cfg.workers = 3;
  const EnsembleSummary t = simulate_ensemble(g, EpidemicParams{}, cfg, 5);
  CHECK(t.mean_i == s.mean_i);
  CHECK(t.amplitude_max == s.amplitude_max);
  CHECK_THROWS_AS(simulate_ensemble(g, EpidemicParams{}, EnsembleConfig{.replicas = 0}, 1),
                  InvalidParams);
}

TEST_CASE("a sweep at the base graph's own metrics needs no rewiring") {
  const Graph g = watts_strogatz({1000, 6, 0.2, 2});
  const double apl = average_path_length(g).apl;
  const double cc = transitivity(g).cc;
  RandomStream rng(3);
  const std::vector<double> targets{apl};
  const std::vector<SweepPoint> points =
      bifurcation_sweep(g, SweepAxis::Apl, cc, targets, EpidemicParams{}, small_config(), rng);
  REQUIRE(points.size() == 1);
  CHECK(points[0].tuning == TuneStatus::Converged);
  CHECK(points[0].achieved_apl == doctest::Approx(apl).epsilon(1e-12));
  CHECK(points[0].achieved_cc == doctest::Approx(cc).epsilon(1e-12));
  CHECK(points[0].fixed_point.has_value());

  const std::string text = csv(points);
  CHECK(text.rfind("axis,target,achieved_apl,achieved_cc,mean_I,amplitude_mean,amplitude_max,"
                   "dominant_period,regime,fp_rho_I,fp_residual,fp_max_multiplier,fp_stable,seed\n"
                   "apl,",
                   0) == 0);
}

TEST_CASE("sweeps are reproducible and chain their graphs") {
  const Graph g = watts_strogatz({1000, 6, 0.2, 4});
  const double cc = transitivity(g).cc;
  const std::vector<double> targets{cc - 0.02, cc};
  SweepConfig cfg = small_config();
  cfg.fixed_point = false;
  const double apl = average_path_length(g).apl;
  RandomStream a(6), b(6);
  const auto pa = bifurcation_sweep(g, SweepAxis::Cc, apl, targets, EpidemicParams{}, cfg, a);
  const auto pb = bifurcation_sweep(g, SweepAxis::Cc, apl, targets, EpidemicParams{}, cfg, b);
  CHECK(csv(pa) == csv(pb));
  REQUIRE(pa.size() == 2);
  CHECK(pa[0].seed != pa[1].seed);
  CHECK_FALSE(pa[0].fixed_point.has_value());
  for (const SweepPoint& p : pa) {
    if (p.tuning == TuneStatus::Converged) {
      CHECK(std::abs(p.achieved_cc - p.target) <= 0.005);
      CHECK(std::abs(p.achieved_apl - apl) <= 0.05);
    }
  }
  // The row for a point without a fixed point leaves those columns empty.
  CHECK(csv(pa).find(",,,,") != std::string::npos);
}

TEST_CASE("sweep input checks") {
  const Graph g = watts_strogatz({200, 6, 0.2, 1});
  RandomStream rng(1);
  const std::vector<double> unsorted{0.3, 0.2};
  CHECK_THROWS_AS(bifurcation_sweep(g, SweepAxis::Cc, 4.0, unsorted, EpidemicParams{},
                                    small_config(), rng),
                  InvalidParams);
  const Graph split = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
  const std::vector<double> one{0.1};
  CHECK_THROWS_AS(bifurcation_sweep(split, SweepAxis::Cc, 1.0, one, EpidemicParams{},
                                    small_config(), rng),
                  DisconnectedGraph);
}
