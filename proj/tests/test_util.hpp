#ifndef CPI_TEST_UTIL_HPP
#define CPI_TEST_UTIL_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cpi/spectra.hpp"

namespace cpi_test {

inline double rel_err(double got, double expected) {
  return std::abs(got - expected) / std::abs(expected);
}

inline cpi::FrequencyGrid default_grid() { return cpi::make_grid(8192, 790.0, 0.24); }

// Deterministic random complex field for property-style checks.
inline cpi::SpectralField random_field(const cpi::FrequencyGrid& grid, unsigned seed,
                                       int carrier_multiple = 1) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  cpi::SpectralField f{grid, cpi::ArrayXcd(grid.n), carrier_multiple};
  for (int k = 0; k < grid.n; ++k) {
    // Gaussian envelope keeps random fields inside the span guard bands.
    const double w = grid.detuning(k);
    const double env = std::exp(-w * w / (2.0 * std::pow(0.02, 2)));
    f.amps(k) = std::complex<double>(dist(rng), dist(rng)) * env;
  }
  return f;
}

inline double max_abs_diff(const cpi::ArrayXcd& a, const cpi::ArrayXcd& b) {
  return (a - b).abs().maxCoeff();
}

// Single-frequency amplitude of a sampled real signal, Goertzel style.
inline double tone_amplitude(const std::vector<double>& x, const std::vector<double>& y,
                             double cycles_per_um) {
  std::complex<double> acc(0.0, 0.0);
  for (size_t i = 0; i < x.size(); ++i)
    acc += y[i] * std::polar(1.0, -cpi::kTwoPi * cycles_per_um * x[i]);
  return 2.0 * std::abs(acc) / static_cast<double>(x.size());
}

inline double mean_of(const std::vector<double>& y) {
  double s = 0.0;
  for (double v : y) s += v;
  return s / static_cast<double>(y.size());
}

// FWHM of a positive feature in (x, y) by linear interpolation, for test
// oracles that need widths of dips/bumps independent of the analysis module.
inline double feature_fwhm(const std::vector<double>& x, const std::vector<double>& y) {
  size_t imax = 0;
  for (size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[imax]) imax = i;
  const double half = 0.5 * y[imax];
  size_t l = imax;
  while (l > 0 && y[l] > half) --l;
  size_t r = imax;
  while (r + 1 < y.size() && y[r] > half) ++r;
  const double xl = x[l] + (x[l + 1] - x[l]) * (half - y[l]) / (y[l + 1] - y[l]);
  const double xr = x[r - 1] + (x[r] - x[r - 1]) * (half - y[r - 1]) / (y[r] - y[r - 1]);
  return xr - xl;
}

}  // namespace cpi_test

#endif
