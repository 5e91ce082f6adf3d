#ifndef CPI_TEST_FULLCARRIER_ORACLE_HPP
#define CPI_TEST_FULLCARRIER_ORACLE_HPP

// Brute-force full-carrier reference engine, test-only. Fields live on an
// absolute frequency grid covering DC to beyond the SFG band; there is no
// baseband envelope or carrier bookkeeping anywhere, so it independently
// checks the production engine's delay/carrier conventions. Only usable at
// reduced chirp, where the optical carrier is resolvable in the time window.

#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "cpi/spectra.hpp"

namespace cpi_test {

using cvec = Eigen::VectorXcd;

struct OscGrid {
  int n;
  double dt;  // fs
  double domega() const { return cpi::kTwoPi / (n * dt); }
  double omega(int k) const { return k * domega(); }
};

struct OscEngine {
  OscGrid grid;
  cvec u, v;  // correlator arms (fixed, delayed), absolute-frequency amplitudes
  double det_center = 0.0, det_sigma = 0.0;

  static Eigen::FFT<double>& fft() {
    static thread_local Eigen::FFT<double> f;
    return f;
  }

  // e^{-iωt} kernel: spectrum index k maps straight onto the forward DFT.
  cvec to_time(const cvec& spec) const {
    cvec out(grid.n);
    fft().fwd(out, spec);
    return out;
  }
  cvec to_freq(const cvec& time) const {
    cvec out(grid.n);
    fft().inv(out, time);
    return out;
  }

  double detect(double tau) const {
    cvec v_tau(grid.n);
    for (int k = 0; k < grid.n; ++k)
      v_tau(k) = v(k) * std::polar(1.0, grid.omega(k) * tau);
    cvec prod = to_time(u).cwiseProduct(to_time(v_tau));
    cvec sfg = to_freq(prod);
    double acc = 0.0;
    for (int k = 0; k < grid.n; ++k) {
      const double d = grid.omega(k) - det_center;
      acc += std::norm(sfg(k)) * std::exp(-d * d / (2.0 * det_sigma * det_sigma));
    }
    return acc * grid.domega();
  }
};

inline cvec osc_gaussian_beam(const OscGrid& g, double center_nm, double fwhm_nm,
                              double gdd) {
  const double w0 = cpi::omega_from_wavelength_nm(center_nm);
  const double sigma = cpi::omega_width_from_nm(fwhm_nm, center_nm) / cpi::kFwhmSigmaRatio;
  cvec out(g.n);
  for (int k = 0; k < g.n; ++k) {
    const double d = g.omega(k) - w0;
    // one-sided analytic signal; far tails are numerically zero anyway
    const double mag = g.omega(k) > 0.5 * w0 && g.omega(k) < 1.5 * w0
                           ? std::exp(-d * d / (4.0 * sigma * sigma))
                           : 0.0;
    out(k) = std::polar(mag, 0.5 * gdd * d * d);
  }
  return out;
}

inline void osc_block_mask(const OscGrid& g, cvec& beam, double center_nm,
                           double width_nm) {
  for (int k = 1; k < g.n; ++k) {
    const double lam = cpi::wavelength_nm_from_omega(g.omega(k));
    if (lam >= center_nm - 0.5 * width_nm && lam <= center_nm + 0.5 * width_nm)
      beam(k) = 0.0;
  }
}

// Full-carrier engine wired as the combined-input (peak) interferometer with
// a blocked band on the chirped beam.
inline OscEngine osc_peak_block_engine(const OscGrid& g, double gdd,
                                       double block_width_nm, double det_nm,
                                       double det_fwhm_nm) {
  OscEngine osc;
  osc.grid = g;
  cvec c_beam = osc_gaussian_beam(g, 790.0, 10.0, +gdd);
  if (block_width_nm > 0.0) osc_block_mask(g, c_beam, 790.0, block_width_nm);
  cvec a_beam = osc_gaussian_beam(g, 790.0, 10.0, -gdd);

  const std::complex<double> i1(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  cvec pre = (c_beam + i1 * a_beam) * inv_sqrt2;
  osc.u = pre * inv_sqrt2;
  osc.v = i1 * pre * inv_sqrt2;
  osc.det_center = cpi::omega_from_wavelength_nm(det_nm);
  osc.det_sigma = cpi::omega_width_from_nm(det_fwhm_nm, det_nm) / cpi::kFwhmSigmaRatio;
  return osc;
}

struct Extremum {
  double x;
  double value;
};

// Local minima with three-point quadratic refinement.
inline std::vector<Extremum> local_minima(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  std::vector<Extremum> out;
  for (size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] < y[i - 1] && y[i] < y[i + 1])) continue;
    const double den = y[i - 1] - 2.0 * y[i] + y[i + 1];
    double dx = 0.0, dv = 0.0;
    if (den > 0.0) {
      dx = 0.5 * (y[i - 1] - y[i + 1]) / den;
      dv = -0.125 * std::pow(y[i - 1] - y[i + 1], 2) / den;
    }
    out.push_back({x[i] + dx * (x[i + 1] - x[i]), y[i] + dv});
  }
  return out;
}

inline std::vector<double> affine_normalized(const std::vector<double>& y) {
  double lo = y[0], hi = y[0];
  for (double v : y) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out(y.size());
  for (size_t i = 0; i < y.size(); ++i) out[i] = (y[i] - lo) / (hi - lo);
  return out;
}

}  // namespace cpi_test

#endif
