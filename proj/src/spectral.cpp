#include "swnet/spectral.hpp"

#include <algorithm>

namespace swnet {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Extinct: return "extinct";
    case Regime::Stationary: return "stationary";
    case Regime::Oscillatory: return "oscillatory";
  }
  return "unknown";
}

namespace {

double median(std::vector<double> values) {
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

RegimeReport classify_regime(const VectorX<double>& rho_i, Eigen::Index burn_in,
                             const RegimeConfig& cfg) {
  if (burn_in < 0 || rho_i.size() <= burn_in + cfg.window_len) {
    throw SeriesTooShort("classify_regime: need more than burn_in + window_len = " +
                         std::to_string(burn_in + cfg.window_len) + " samples, got " +
                         std::to_string(rho_i.size()));
  }
  RegimeReport report;
  if (rho_i(rho_i.size() - 1) == 0.0) {
    report.regime = Regime::Extinct;
    return report;
  }

  const VectorX<double> post = rho_i.tail(rho_i.size() - burn_in);
  report.mean_rho_i = post.mean();

  const Spectrogram<double> spec = stft(post, cfg.window_len, cfg.hop);
  const Eigen::Index bins = spec.bins();
  const Eigen::Index lo = std::clamp<Eigen::Index>(cfg.min_bin, 1, bins - 1);

  std::vector<double> ratios;
  std::size_t passing = 0;
  double excursion_sum = 0.0;
  for (Eigen::Index f = 0; f < spec.frames(); ++f) {
    const auto col = spec.magnitudes.col(f);
    std::vector<double> nonzero(col.data() + 1, col.data() + bins);
    const double floor_level = median(nonzero);
    const double peak = col.segment(lo, bins - lo).maxCoeff();
    const double ratio = floor_level > 0.0 ? peak / floor_level : 0.0;
    ratios.push_back(ratio);
    passing += ratio >= cfg.peak_ratio;

    const auto segment = post.segment(spec.frame_start[static_cast<std::size_t>(f)],
                                      cfg.window_len);
    const double half_range = 0.5 * (segment.maxCoeff() - segment.minCoeff());
    excursion_sum += half_range;
    report.amplitude_max = std::max(report.amplitude_max, half_range);
  }
  report.amplitude_mean = excursion_sum / static_cast<double>(spec.frames());
  report.peak_ratio = median(ratios);
  report.oscillating_frames = static_cast<double>(passing) / static_cast<double>(spec.frames());

  const bool oscillatory = report.oscillating_frames >= cfg.min_frame_fraction &&
                           report.amplitude_mean > cfg.min_amplitude;
  report.regime = oscillatory ? Regime::Oscillatory : Regime::Stationary;
  if (oscillatory) {
    // Peak of the frame-averaged spectrum, refined by a parabola through the
    // neighbouring bins.
    const VectorX<double> average = spec.magnitudes.rowwise().mean();
    Eigen::Index k = 0;
    average.segment(lo, bins - lo).maxCoeff(&k);
    k += lo;
    double offset = 0.0;
    if (k > 0 && k + 1 < bins) {
      const double a = average(k - 1), b = average(k), c = average(k + 1);
      const double curvature = a - 2.0 * b + c;
      if (curvature < 0.0) offset = 0.5 * (a - c) / curvature;
    }
    report.dominant_period = static_cast<double>(spec.window_len) / (static_cast<double>(k) + offset);
  }
  return report;
}

RegimeReport classify_regime(const DensitySeries& series, Eigen::Index burn_in,
                             const RegimeConfig& cfg) {
  const std::vector<double> rho = infected_density(series);
  return classify_regime(Eigen::Map<const VectorX<double>>(rho.data(),
                                                           static_cast<Eigen::Index>(rho.size())),
                         burn_in, cfg);
}

}  // namespace swnet
