#include "cpi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <unsupported/Eigen/FFT>

namespace cpi {

namespace {

struct Slice {
  std::vector<double> x, y;
};

Slice sliced(const Curve& c, const std::optional<Window>& w) {
  if (c.x.size() != c.y.size() || c.x.empty())
    throw MetricError("curve is empty or malformed");
  Slice s;
  for (size_t i = 0; i < c.x.size(); ++i) {
    if (w && (c.x[i] < w->lo || c.x[i] > w->hi)) continue;
    s.x.push_back(c.x[i]);
    s.y.push_back(c.y[i]);
  }
  if (s.x.size() < 3) throw MetricError("window selects fewer than 3 samples");
  return s;
}

// Quadratic vertex value through (y0,y1,y2) at unit spacing; y1 is the
// extremum bin.
double refined_extremum(double y0, double y1, double y2) {
  const double den = y0 - 2.0 * y1 + y2;
  if (den == 0.0) return y1;
  const double num = y0 - y2;
  return y1 - num * num / (8.0 * den);
}

double uniform_step(const std::vector<double>& x) {
  const double dx = x[1] - x[0];
  for (size_t i = 1; i + 1 < x.size(); ++i)
    if (std::abs((x[i + 1] - x[i]) - dx) > 1e-6 * std::abs(dx))
      throw MetricError("curve samples are not uniformly spaced");
  return dx;
}

struct FwhmResult {
  double width;
  double peak;
};

// FWHM of a non-negative profile by linear interpolation of the half-max
// crossings around the global peak.
FwhmResult profile_fwhm(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t imax = std::distance(y.begin(), std::max_element(y.begin(), y.end()));
  const double peak = y[imax];
  if (peak <= 0.0) throw MetricError("envelope has no positive peak");
  const double half = 0.5 * peak;

  size_t l = imax;
  while (l > 0 && y[l] > half) --l;
  size_t r = imax;
  while (r + 1 < y.size() && y[r] > half) ++r;
  if (y[l] > half || y[r] > half)
    throw MetricError("envelope does not fall below half maximum inside the window");

  const double xl = x[l] + (x[l + 1] - x[l]) * (half - y[l]) / (y[l + 1] - y[l]);
  const double xr = x[r - 1] + (x[r] - x[r - 1]) * (half - y[r - 1]) / (y[r] - y[r - 1]);
  return {xr - xl, peak};
}

}  // namespace

Metric visibility(const Curve& curve, std::optional<Window> window) {
  Slice s = sliced(curve, window);
  const size_t imax = std::distance(s.y.begin(), std::max_element(s.y.begin(), s.y.end()));
  const size_t imin = std::distance(s.y.begin(), std::min_element(s.y.begin(), s.y.end()));

  double vmax = s.y[imax];
  double vmin = s.y[imin];
  double unc = 0.0;
  if (imax > 0 && imax + 1 < s.y.size()) {
    const double r = refined_extremum(s.y[imax - 1], s.y[imax], s.y[imax + 1]);
    unc += std::abs(r - vmax);
    vmax = r;
  }
  if (imin > 0 && imin + 1 < s.y.size()) {
    const double r = -refined_extremum(-s.y[imin - 1], -s.y[imin], -s.y[imin + 1]);
    unc += std::abs(r - vmin);
    vmin = r;
  }

  Metric m;
  m.name = "visibility";
  m.value = (vmax + vmin) > 0.0 ? (vmax - vmin) / (vmax + vmin) : 0.0;
  m.uncertainty = (vmax + vmin) > 0.0 ? unc / (vmax + vmin) : 0.0;
  m.window_lo = s.x.front();
  m.window_hi = s.x.back();
  return m;
}

Metric fringe_period(const Curve& curve, std::optional<Window> window) {
  Slice s = sliced(curve, window);
  const size_t n = s.x.size();
  if (n < 16) throw MetricError("fringe_period needs at least 16 samples");
  const double dx = uniform_step(s.x);

  const double mean = std::accumulate(s.y.begin(), s.y.end(), 0.0) / n;

  // Hann window, 4x zero padding, magnitude spectrum.
  size_t npad = 1;
  while (npad < 4 * n) npad <<= 1;
  std::vector<std::complex<double>> buf(npad, {0.0, 0.0});
  for (size_t j = 0; j < n; ++j) {
    const double w = 0.5 * (1.0 - std::cos(kTwoPi * j / (n - 1)));
    buf[j] = {(s.y[j] - mean) * w, 0.0};
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec(npad);
  fft.fwd(spec, buf);

  const size_t pad_ratio = npad / n;
  const size_t kmin = 3 * pad_ratio;  // clear of the DC leakage mainlobe
  const size_t kmax = npad / 2;
  if (kmin >= kmax) throw MetricError("window too short for spectral analysis");

  std::vector<double> mag(kmax - kmin);
  for (size_t k = kmin; k < kmax; ++k) mag[k - kmin] = std::abs(spec[k]);
  const size_t rel = std::distance(mag.begin(), std::max_element(mag.begin(), mag.end()));
  const size_t kpk = kmin + rel;

  std::vector<double> sorted(mag);
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (mag[rel] < 3.0 * median)
    throw MetricError("no fringe component: no non-DC spectral peak above 3x the median");

  // Quadratic interpolation on the log magnitude around the peak bin.
  double delta = 0.0;
  if (kpk > kmin && kpk + 1 < kmax && mag[rel] > 0.0) {
    const double l = std::log(std::max(std::abs(spec[kpk - 1]), 1e-300));
    const double c = std::log(std::abs(spec[kpk]));
    const double r = std::log(std::max(std::abs(spec[kpk + 1]), 1e-300));
    const double den = l - 2.0 * c + r;
    if (den < 0.0) delta = 0.5 * (l - r) / den;
  }

  const double freq = (kpk + delta) / (npad * dx);
  const double period = 1.0 / freq;
  const double span = s.x.back() - s.x.front();
  if (span / period < 4.0)
    throw MetricError("fewer than 4 fringes in the window");

  Metric m;
  m.name = "fringe_period";
  m.value = period;
  m.uncertainty = period * period / (2.0 * n * dx);  // half an unpadded bin
  m.window_lo = s.x.front();
  m.window_hi = s.x.back();
  return m;
}

Metric envelope_fwhm(const Curve& curve) {
  std::vector<double> x, env;

  if (curve.has_envelope()) {
    if (curve.envelope_low.size() != curve.x.size() ||
        curve.envelope_high.size() != curve.x.size())
      throw MetricError("envelope columns do not match the delay column");
    x = curve.x;
    env.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i)
      env[i] = curve.envelope_high[i] - curve.envelope_low[i];
  } else {
    // Demodulate a fringe-resolved curve at its measured fringe period: a
    // windowed least-squares fit of a + b·cos(2πx/λf + φ), one period wide.
    const Metric period = fringe_period(curve);
    const double lf = period.value;
    const double dx = uniform_step(curve.x);
    const int half = std::max(2, static_cast<int>(std::lround(lf / dx / 2.0)));
    const size_t n = curve.x.size();

    for (size_t i = half; i + half < n; ++i) {
      Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
      Eigen::Vector3d atb = Eigen::Vector3d::Zero();
      for (int j = -half; j <= half; ++j) {
        const size_t idx = i + j;
        const double ph = kTwoPi * curve.x[idx] / lf;
        const Eigen::Vector3d row(1.0, std::cos(ph), std::sin(ph));
        ata += row * row.transpose();
        atb += row * curve.y[idx];
      }
      const Eigen::Vector3d fit = ata.ldlt().solve(atb);
      x.push_back(curve.x[i]);
      env.push_back(2.0 * std::hypot(fit(1), fit(2)));
    }
    if (x.size() < 8) throw MetricError("too few samples after demodulation");

    FwhmResult probe = profile_fwhm(x, env);
    if (probe.width / lf < 8.0)
      throw MetricError("fewer than 8 fringes per envelope width");
  }

  FwhmResult r = profile_fwhm(x, env);
  Metric m;
  m.name = "envelope_fwhm";
  m.value = r.width;
  m.uncertainty = x.size() > 1 ? std::abs(x[1] - x[0]) : 0.0;
  m.window_lo = x.front();
  m.window_hi = x.back();
  return m;
}

CurveDistance curve_distance(const Curve& a, const Curve& b) {
  if (a.x.size() < 2 || b.x.size() < 2) throw MetricError("curves too short");
  const double lo = std::max(a.x.front(), b.x.front());
  const double hi = std::min(a.x.back(), b.x.back());
  if (lo >= hi) throw MetricError("curve domains are disjoint");

  auto normalized = [](const std::vector<double>& y) {
    const auto [mn, mx] = std::minmax_element(y.begin(), y.end());
    if (*mx == *mn) throw MetricError("constant curve: affine normalization undefined");
    std::vector<double> out(y.size());
    for (size_t i = 0; i < y.size(); ++i) out[i] = (y[i] - *mn) / (*mx - *mn);
    return out;
  };
  const std::vector<double> na = normalized(a.y);
  const std::vector<double> nb = normalized(b.y);

  auto interp = [&](double x) {
    const auto it = std::lower_bound(b.x.begin(), b.x.end(), x);
    size_t i = std::distance(b.x.begin(), it);
    if (i < b.x.size() && b.x[i] == x) return nb[i];  // exact node
    if (i == 0) return nb.front();
    if (i >= b.x.size()) return nb.back();
    const double t = (x - b.x[i - 1]) / (b.x[i] - b.x[i - 1]);
    return nb[i - 1] + t * (nb[i] - nb[i - 1]);
  };

  CurveDistance d;
  double sq = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < a.x.size(); ++i) {
    if (a.x[i] < lo || a.x[i] > hi) continue;
    const double diff = std::abs(na[i] - interp(a.x[i]));
    d.l_inf = std::max(d.l_inf, diff);
    sq += diff * diff;
    ++count;
  }
  if (count == 0) throw MetricError("no overlapping samples");
  d.l2 = std::sqrt(sq / count);
  return d;
}

}  // namespace cpi
