#ifndef CPI_ANALYSIS_HPP
#define CPI_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cpi/spectra.hpp"

namespace cpi {

// A sampled interference curve: delays in µm, signal in arbitrary units,
// optional envelope columns from envelope-mode scans.
struct Curve {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> envelope_low;
  std::vector<double> envelope_high;

  bool has_envelope() const { return !envelope_low.empty(); }
};

struct Metric {
  std::string name;
  double value = 0.0;
  double uncertainty = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

struct Window {
  double lo;
  double hi;
};

// (max - min)/(max + min) over the window, extrema refined by three-point
// quadratic interpolation. Throws MetricError on an empty window.
Metric visibility(const Curve& curve, std::optional<Window> window = std::nullopt);

// Dominant non-DC spatial frequency of the discrete spectrum (Hann window,
// quadratic peak interpolation); period = 1/frequency. Throws MetricError
// when no non-DC peak reaches 3× the spectral median or fewer than 4 fringes
// fit the window.
Metric fringe_period(const Curve& curve, std::optional<Window> window = std::nullopt);

// FWHM of the (upper - lower) envelope via half-max crossings. Fringe-mode
// curves are demodulated at their measured fringe period first and need
// ≥ 8 fringes per envelope width.
Metric envelope_fwhm(const Curve& curve);

struct CurveDistance {
  double l_inf = 0.0;
  double l2 = 0.0;
};

// Affinely normalizes both curves to [0,1], resamples b onto a's delays by
// linear interpolation over the overlapping domain, and reports L∞ and L2.
// Throws MetricError on disjoint domains or a constant curve.
CurveDistance curve_distance(const Curve& a, const Curve& b);

}  // namespace cpi

#endif
