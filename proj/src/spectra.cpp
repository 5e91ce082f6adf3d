#include "cpi/spectra.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

namespace cpi {

namespace {

// Forward DFT, X_k = Σ_j x_j e^{-2πi jk/n}, unscaled.
Eigen::VectorXcd dft_forward(const Eigen::VectorXcd& in) {
  static thread_local Eigen::FFT<double> fft;
  Eigen::VectorXcd out(in.size());
  fft.fwd(out, in);
  return out;
}

// Applies (-1)^k in place; the index shift that centers both grids.
void alternate_signs(ArrayXcd& a) {
  for (Eigen::Index k = 1; k < a.size(); k += 2) a(k) = -a(k);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

ArrayXd FrequencyGrid::detunings() const {
  ArrayXd w(n);
  for (int k = 0; k < n; ++k) w(k) = detuning(k);
  return w;
}

FrequencyGrid make_grid(int n, double center_wavelength_nm, double span_rad_per_fs) {
  if (!is_power_of_two(n) || n < 16)
    throw ConfigError("grid.n must be a power of two >= 16, got " + std::to_string(n));
  if (center_wavelength_nm <= 0.0)
    throw ConfigError("grid.center_wavelength_nm must be positive");
  if (span_rad_per_fs <= 0.0)
    throw ConfigError("grid.span_rad_per_fs must be positive");
  const double carrier = omega_from_wavelength_nm(center_wavelength_nm);
  if (span_rad_per_fs >= 2.0 * carrier)
    throw ConfigError("grid span breaks baseband validity: span must stay below 2x carrier");
  return FrequencyGrid{n, span_rad_per_fs / n, carrier};
}

SpectralField zero_field(const FrequencyGrid& grid, int carrier_multiple) {
  return SpectralField{grid, ArrayXcd::Zero(grid.n), carrier_multiple};
}

MaskSpec MaskSpec::block(double center_nm, double width_nm) {
  MaskSpec m;
  m.kind = Kind::block;
  m.center_nm = center_nm;
  m.width_nm = width_nm;
  return m;
}

MaskSpec MaskSpec::edge(double cutoff_nm, Keep keep) {
  MaskSpec m;
  m.kind = Kind::edge;
  m.cutoff_nm = cutoff_nm;
  m.keep = keep;
  return m;
}

double transform_limited_fwhm_fs(const PulseSpec& spec) {
  const double dw = omega_width_from_nm(spec.fwhm_bandwidth_nm, spec.center_wavelength_nm);
  return kFourLn2 / dw;
}

double stretched_fwhm_fs(const PulseSpec& spec) {
  const double t0 = transform_limited_fwhm_fs(spec);
  const double r = kFourLn2 * spec.gdd_fs2 / (t0 * t0);
  return t0 * std::sqrt(1.0 + r * r);
}

SpectralField synthesize_pulse(const FrequencyGrid& grid, const PulseSpec& spec) {
  if (spec.center_wavelength_nm <= 0.0)
    throw ConfigError("pulse center_wavelength_nm must be positive");
  if (spec.fwhm_bandwidth_nm <= 0.0)
    throw ConfigError("pulse fwhm_bandwidth_nm must be positive");

  const double center_offset =
      omega_from_wavelength_nm(spec.center_wavelength_nm) - grid.carrier;
  const double fwhm_w =
      omega_width_from_nm(spec.fwhm_bandwidth_nm, spec.center_wavelength_nm);
  const double sigma_i = fwhm_w / kFwhmSigmaRatio;  // intensity std dev

  // Clipping guard: intensity fraction beyond the span edges, evaluated
  // analytically for the Gaussian.
  const double lo = grid.detuning(0) - center_offset;
  const double hi = grid.detuning(grid.n - 1) - center_offset;
  const double outside = 0.5 * std::erfc(hi / (std::sqrt(2.0) * sigma_i)) +
                         0.5 * std::erfc(-lo / (std::sqrt(2.0) * sigma_i));
  if (outside > 1e-6)
    throw NumericGuardError("pulse spectrum clipped by grid span (resolution error)");

  SpectralField f{grid, ArrayXcd(grid.n), 1};
  for (int k = 0; k < grid.n; ++k) {
    const double w = grid.detuning(k);
    const double d = w - center_offset;
    const double mag = spec.amplitude * std::exp(-d * d / (4.0 * sigma_i * sigma_i));
    f.amps(k) = std::polar(mag, 0.5 * spec.gdd_fs2 * w * w);
  }
  return f;
}

MaskResult apply_mask(const SpectralField& field, const MaskSpec& mask) {
  const FrequencyGrid& g = field.grid;
  const double carrier = field.carrier_multiple * g.carrier;
  const double lambda_min = wavelength_nm_from_omega(carrier + g.detuning(g.n - 1));
  const double lambda_max = wavelength_nm_from_omega(carrier + g.detuning(0));

  bool overlaps = false;
  MaskResult res{field, false};
  auto zero_where = [&](auto&& remove) {
    for (int k = 0; k < g.n; ++k) {
      const double lam = wavelength_nm_from_omega(carrier + g.detuning(k));
      if (remove(lam)) res.field.amps(k) = complexd(0.0, 0.0);
    }
  };

  switch (mask.kind) {
    case MaskSpec::Kind::block: {
      if (mask.width_nm <= 0.0) throw ConfigError("mask width_nm must be positive");
      const double lo = mask.center_nm - 0.5 * mask.width_nm;
      const double hi = mask.center_nm + 0.5 * mask.width_nm;
      overlaps = hi >= lambda_min && lo <= lambda_max;
      if (overlaps) zero_where([&](double lam) { return lam >= lo && lam <= hi; });
      break;
    }
    case MaskSpec::Kind::edge: {
      const bool keep_red = mask.keep == MaskSpec::Keep::red_side;
      // The removed half-line must reach into the grid's wavelength range.
      overlaps = keep_red ? mask.cutoff_nm >= lambda_min : mask.cutoff_nm <= lambda_max;
      if (overlaps)
        zero_where([&](double lam) { return keep_red ? lam <= mask.cutoff_nm
                                                     : lam >= mask.cutoff_nm; });
      break;
    }
  }
  res.applied = overlaps;
  return res;
}

SpectralField apply_chirp(const SpectralField& field, double gdd_fs2) {
  SpectralField out = field;
  for (int k = 0; k < field.grid.n; ++k) {
    const double w = field.grid.detuning(k);
    out.amps(k) *= std::polar(1.0, 0.5 * gdd_fs2 * w * w);
  }
  return out;
}

TemporalField to_time(const SpectralField& field) {
  ArrayXcd buf = field.amps;
  alternate_signs(buf);
  Eigen::VectorXcd out = dft_forward(buf.matrix());
  ArrayXcd samples = out.array();
  alternate_signs(samples);
  samples *= field.grid.delta_omega / std::sqrt(kTwoPi);
  return TemporalField{field.grid, std::move(samples), field.carrier_multiple};
}

SpectralField to_frequency(const TemporalField& field) {
  ArrayXcd buf = field.samples;
  alternate_signs(buf);
  buf = buf.conjugate();
  Eigen::VectorXcd out = dft_forward(buf.matrix());
  ArrayXcd amps = out.array().conjugate();
  alternate_signs(amps);
  amps *= field.grid.time_step() / std::sqrt(kTwoPi);
  return SpectralField{field.grid, std::move(amps), field.carrier_multiple};
}

SpectralField delay_field(const SpectralField& field, double tau_fs) {
  if (std::abs(tau_fs) > 0.45 * field.grid.time_window())
    throw NumericGuardError("delay exceeds the time-window guard (aliasing error)");
  // Extended precision keeps the delay phases additive at the 1e-12 level
  // even when the accumulated carrier phase reaches 1e4 rad. Exact anchors
  // every 64 bins, a complex rotor in between.
  const long double tau = tau_fs;
  const long double base =
      static_cast<long double>(field.carrier_multiple) * field.grid.carrier * tau;
  const long double step = static_cast<long double>(field.grid.delta_omega) * tau;
  const int half = field.grid.n / 2;
  const complexd rotor(static_cast<double>(cosl(step)), static_cast<double>(sinl(step)));

  SpectralField out = field;
  complexd z;
  for (int k = 0; k < field.grid.n; ++k) {
    if ((k & 63) == 0) {
      const long double phase = base + static_cast<long double>(k - half) * step;
      z = complexd(static_cast<double>(cosl(phase)), static_cast<double>(sinl(phase)));
    }
    out.amps(k) *= z;
    z *= rotor;
  }
  return out;
}

namespace {

// FWHM of a sampled non-negative profile: global max, then the first
// half-max crossings on either side, linearly interpolated in x.
double fwhm_of_profile(const ArrayXd& x, const ArrayXd& y, double* peak_x = nullptr) {
  int imax = 0;
  y.maxCoeff(&imax);
  const double half = 0.5 * y(imax);
  if (y(imax) <= 0.0) throw ConfigError("profile has no positive peak");

  int l = imax;
  while (l > 0 && y(l) > half) --l;
  int r = imax;
  while (r < y.size() - 1 && y(r) > half) ++r;
  if (y(l) > half || y(r) > half)
    throw MetricError("profile does not fall below half maximum inside the window");

  const double xl = x(l) + (x(l + 1) - x(l)) * (half - y(l)) / (y(l + 1) - y(l));
  const double xr = x(r - 1) + (x(r) - x(r - 1)) * (half - y(r - 1)) / (y(r) - y(r - 1));

  if (peak_x) {
    // Quadratic vertex through the max bin and neighbors.
    double px = x(imax);
    if (imax > 0 && imax < y.size() - 1) {
      const double a = y(imax - 1), b = y(imax), c = y(imax + 1);
      const double den = a - 2.0 * b + c;
      if (den < 0.0) px += 0.5 * (a - c) / den * (x(imax + 1) - x(imax));
    }
    *peak_x = px;
  }
  return xr - xl;
}

}  // namespace

FieldStats field_stats(const SpectralField& field) {
  const double e = field.energy();
  if (e <= 0.0) throw ConfigError("field_stats undefined for a zero field");

  FieldStats s;
  s.energy = e;

  const FrequencyGrid& g = field.grid;
  ArrayXd w = g.detunings();
  ArrayXd intensity = field.amps.abs2();
  double peak_w = 0.0;
  const double fwhm_w = fwhm_of_profile(w, intensity, &peak_w);
  const double carrier = field.carrier_multiple * g.carrier;
  s.peak_wavelength_nm = wavelength_nm_from_omega(carrier + peak_w);

  // Convert each half-max crossing exactly; report the wavelength width.
  {
    int imax = 0;
    intensity.maxCoeff(&imax);
    const double half = 0.5 * intensity(imax);
    int l = imax;
    while (l > 0 && intensity(l) > half) --l;
    int r = imax;
    while (r < g.n - 1 && intensity(r) > half) ++r;
    const double wl = w(l) + g.delta_omega * (half - intensity(l)) /
                                 (intensity(l + 1) - intensity(l));
    const double wr = w(r - 1) + g.delta_omega * (half - intensity(r - 1)) /
                                     (intensity(r) - intensity(r - 1));
    s.spectral_fwhm_nm = wavelength_nm_from_omega(carrier + wl) -
                         wavelength_nm_from_omega(carrier + wr);
  }
  (void)fwhm_w;

  TemporalField t = to_time(field);
  ArrayXd tt(g.n);
  for (int j = 0; j < g.n; ++j) tt(j) = g.time_at(j);
  s.temporal_fwhm_fs = fwhm_of_profile(tt, t.samples.abs2());
  return s;
}

}  // namespace cpi
