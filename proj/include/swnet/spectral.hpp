#ifndef SWNET_SPECTRAL_HPP
#define SWNET_SPECTRAL_HPP

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "swnet/epidemic.hpp"
#include "swnet/errors.hpp"

namespace swnet {

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Periodic Hann window w[n] = (1 - cos(2 pi n / len)) / 2.
template <class Scalar>
VectorX<Scalar> hann_window(Eigen::Index len) {
  const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
  return VectorX<Scalar>::NullaryExpr(len, [=](Eigen::Index n) {
    return Scalar(0.5) * (Scalar(1) - std::cos(two_pi * Scalar(n) / Scalar(len)));
  });
}

/// One-sided short-time spectrum: column f holds |DFT| of frame f for bins
/// 0..window_len/2; bin b is the frequency b / window_len cycles per step.
template <class Scalar>
struct Spectrogram {
  Eigen::Index window_len = 0;
  Eigen::Index hop = 0;
  std::vector<Eigen::Index> frame_start;
  MatrixX<Scalar> magnitudes;

  Eigen::Index frames() const { return magnitudes.cols(); }
  Eigen::Index bins() const { return magnitudes.rows(); }
  Scalar bin_width() const { return Scalar(1) / Scalar(window_len); }
};

/// Number of full frames of `window_len` samples, `hop` apart, in `len`.
inline Eigen::Index frame_count(Eigen::Index len, Eigen::Index window_len, Eigen::Index hop) {
  return len < window_len ? 0 : 1 + (len - window_len) / hop;
}

/// Mean-removed, Hann-windowed segment of `series` starting at `start`.
template <class Derived>
VectorX<typename Derived::Scalar> windowed_segment(const Eigen::MatrixBase<Derived>& series,
                                                   Eigen::Index start,
                                                   const VectorX<typename Derived::Scalar>& window) {
  const auto segment = series.segment(start, window.size());
  return (segment.array() - segment.mean()).matrix().cwiseProduct(window);
}

/// Short-time Fourier transform of a real series. Each frame is mean-removed
/// and Hann-windowed before the transform. Throws SeriesTooShort when the
/// series is shorter than one window, InvalidParams for a non-positive hop.
template <class Derived>
Spectrogram<typename Derived::Scalar> stft(const Eigen::MatrixBase<Derived>& series,
                                           Eigen::Index window_len, Eigen::Index hop) {
  using Scalar = typename Derived::Scalar;
  if (hop < 1 || window_len < 2) throw InvalidParams("stft: hop >= 1 and window >= 2 required");
  if (series.size() < window_len) {
    throw SeriesTooShort("stft: series of length " + std::to_string(series.size()) +
                         " is shorter than the window (" + std::to_string(window_len) + ")");
  }
  Spectrogram<Scalar> out;
  out.window_len = window_len;
  out.hop = hop;
  const Eigen::Index frames = frame_count(series.size(), window_len, hop);
  const Eigen::Index bins = window_len / 2 + 1;
  out.magnitudes.resize(bins, frames);
  out.frame_start.resize(static_cast<std::size_t>(frames));

  const VectorX<Scalar> window = hann_window<Scalar>(window_len);
  Eigen::FFT<Scalar> fft;
  std::vector<Scalar> buffer(static_cast<std::size_t>(window_len));
  std::vector<std::complex<Scalar>> spectrum;
  for (Eigen::Index f = 0; f < frames; ++f) {
    const Eigen::Index start = f * hop;
    out.frame_start[static_cast<std::size_t>(f)] = start;
    Eigen::Map<VectorX<Scalar>>(buffer.data(), window_len) =
        windowed_segment(series, start, window);
    fft.fwd(spectrum, buffer);
    for (Eigen::Index b = 0; b < bins; ++b) {
      out.magnitudes(b, f) = std::abs(spectrum[static_cast<std::size_t>(b)]);
    }
  }
  return out;
}

/// Sum of squared magnitudes over the full two-sided spectrum, divided by
/// window_len, for frame f. Equals the frame's windowed time-domain energy.
template <class Scalar>
Scalar spectral_energy(const Spectrogram<Scalar>& s, Eigen::Index f) {
  const auto col = s.magnitudes.col(f);
  Scalar total = col.squaredNorm();
  // Bins other than DC (and Nyquist for even windows) appear twice.
  total += col.segment(1, s.bins() - 1).squaredNorm();
  if (s.window_len % 2 == 0) total -= col(s.bins() - 1) * col(s.bins() - 1);
  return total / Scalar(s.window_len);
}

/// Amplitude of a sinusoid whose energy falls in bin b of frame f:
/// 2 |X_b| / sum(w).
template <class Scalar>
Scalar sinusoid_amplitude(const Spectrogram<Scalar>& s, Eigen::Index b, Eigen::Index f) {
  return Scalar(4) * s.magnitudes(b, f) / Scalar(s.window_len);
}

// --- Regime classification --------------------------------------------------

enum class Regime { Extinct, Stationary, Oscillatory };

std::string to_string(Regime regime);

struct RegimeConfig {
  Eigen::Index window_len = 256;
  Eigen::Index hop = 64;
  /// A frame oscillates when its largest bin (from min_bin up) is at least
  /// this many times the median nonzero-frequency magnitude.
  double peak_ratio = 5.0;
  Eigen::Index min_bin = 2;
  /// Minimum half peak-to-peak excursion for an oscillatory verdict.
  double min_amplitude = 0.05;
  /// Fraction of frames that must pass the peak test.
  double min_frame_fraction = 0.5;
};

struct RegimeReport {
  Regime regime = Regime::Stationary;
  double mean_rho_i = 0.0;
  double amplitude_mean = 0.0;  // mean over frames of half peak-to-peak
  double amplitude_max = 0.0;   // largest half peak-to-peak over frames
  std::optional<double> dominant_period;
  double peak_ratio = 0.0;        // median over frames of peak / median magnitude
  double oscillating_frames = 0;  // fraction of frames passing the peak test
};

/// Classifies the post-burn-in part of an infected-density series.
/// Extinct if the last value is zero; otherwise Oscillatory when enough frames
/// show a dominant spectral peak and the excursion exceeds min_amplitude;
/// otherwise Stationary. Throws SeriesTooShort unless the series is longer
/// than burn_in + window_len.
RegimeReport classify_regime(const VectorX<double>& rho_i, Eigen::Index burn_in,
                             const RegimeConfig& cfg = {});

RegimeReport classify_regime(const DensitySeries& series, Eigen::Index burn_in,
                             const RegimeConfig& cfg = {});

}  // namespace swnet

#endif  // SWNET_SPECTRAL_HPP
