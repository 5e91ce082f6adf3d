#ifndef CPI_SPECTRA_HPP
#define CPI_SPECTRA_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cpi {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using complexd = std::complex<double>;

// Error taxonomy shared by every module. ConfigError covers malformed or
// inconsistent inputs, NumericGuardError covers tripped numerical guards
// (aliasing, resolution, undersampling), MetricError covers analysis
// preconditions that the data fails to meet.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MetricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unit conventions, binding across all modules:
//   wavelengths in nm at interfaces, angular frequency in rad/fs internally,
//   time in fs, path delay in µm with τ = Δx / c.
inline constexpr double kSpeedOfLightUmFs = 0.299792458;  // µm/fs
inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;
inline constexpr double kTwoPiCNm = kTwoPi * 299.792458;  // nm·rad/fs
inline constexpr double kFwhmSigmaRatio = 2.3548200450309493;  // 2·sqrt(2 ln 2)
inline constexpr double kFourLn2 = 2.772588722239781;

inline double omega_from_wavelength_nm(double nm) { return kTwoPiCNm / nm; }
inline double wavelength_nm_from_omega(double omega) { return kTwoPiCNm / omega; }

// Width conversion through the local Jacobian |dω/dλ| = 2πc/λ².
inline double omega_width_from_nm(double width_nm, double at_nm) {
  return kTwoPiCNm * width_nm / (at_nm * at_nm);
}
inline double nm_width_from_omega(double width_omega, double at_nm) {
  return width_omega * at_nm * at_nm / kTwoPiCNm;
}

// Uniform detuning grid about a carrier; the shared sampling contract for
// every field. Bin k sits at detuning (k - n/2)·delta_omega, the time window
// is T = 2π/delta_omega sampled at δt = T/n.
struct FrequencyGrid {
  int n = 0;                // sample count, power of two, ≥ 16
  double delta_omega = 0.0; // rad/fs
  double carrier = 0.0;     // ω_ref, rad/fs

  double span() const { return n * delta_omega; }
  double time_window() const { return kTwoPi / delta_omega; }
  double time_step() const { return time_window() / n; }
  double detuning(int k) const { return (k - n / 2) * delta_omega; }
  double time_at(int j) const { return (j - n / 2) * time_step(); }
  ArrayXd detunings() const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

// carrier = 2πc/λ₀. Throws ConfigError for a non-power-of-two n, n < 16, or
// a span that breaks baseband validity (span ≥ 2·carrier).
FrequencyGrid make_grid(int n, double center_wavelength_nm, double span_rad_per_fs);

// Complex baseband envelope of one polarization mode. Bin k holds the
// amplitude at absolute frequency carrier_multiple·ω_ref + ω̃_k.
struct SpectralField {
  FrequencyGrid grid;
  ArrayXcd amps;
  int carrier_multiple = 1;  // 1 = fundamental, 2 = SFG

  double energy() const { return amps.abs2().sum() * grid.delta_omega; }
};

struct TemporalField {
  FrequencyGrid grid;
  ArrayXcd samples;
  int carrier_multiple = 1;

  double energy() const { return samples.abs2().sum() * grid.time_step(); }
};

SpectralField zero_field(const FrequencyGrid& grid, int carrier_multiple = 1);

// Gaussian pulse: intensity-spectrum FWHM in nm, quadratic spectral phase
// φ(ω̃) = gdd_fs2·ω̃²/2 about the grid carrier.
struct PulseSpec {
  double center_wavelength_nm = 790.0;
  double fwhm_bandwidth_nm = 10.0;
  double gdd_fs2 = 0.0;
  double amplitude = 1.0;
};

// Hard-edged spectral masks, wavelengths in nm.
struct MaskSpec {
  enum class Kind { block, edge };
  enum class Keep { red_side, blue_side };  // edge only
  Kind kind = Kind::block;
  double center_nm = 0.0;  // block
  double width_nm = 0.0;   // block
  double cutoff_nm = 0.0;  // edge
  Keep keep = Keep::red_side;

  static MaskSpec block(double center_nm, double width_nm);
  static MaskSpec edge(double cutoff_nm, Keep keep);
};

struct MaskResult {
  SpectralField field;
  bool applied = false;  // false: mask window misses the grid, field unchanged
};

// Gaussian spectrum with the stated intensity FWHM plus the quadratic chirp
// phase. Throws NumericGuardError when more than 1e-6 of the intensity would
// fall outside the grid span.
SpectralField synthesize_pulse(const FrequencyGrid& grid, const PulseSpec& spec);

// Transform-limited and chirped intensity-FWHM durations for a PulseSpec:
// T_out = T_in·sqrt(1 + (4ln2·A/T_in²)²).
double transform_limited_fwhm_fs(const PulseSpec& spec);
double stretched_fwhm_fs(const PulseSpec& spec);

// Zeroes amplitudes inside the blocked region (hard edges). Energy is
// non-increasing; applying the same mask twice is bitwise idempotent.
MaskResult apply_mask(const SpectralField& field, const MaskSpec& mask);

// Pure quadratic spectral phase exp(i·gdd·ω̃²/2); leaves every power-spectrum
// bin unchanged.
SpectralField apply_chirp(const SpectralField& field, double gdd_fs2);

// Unitary discrete transforms with the e^{∓iω̃t} kernel and the 1/√(2π)
// measure, so spectral and temporal energies agree bin-exactly.
TemporalField to_time(const SpectralField& field);
SpectralField to_frequency(const TemporalField& field);

// Multiplies bin k by exp(i·(carrier_multiple·ω_ref + ω̃_k)·τ): envelope
// shift plus the absolute carrier phase, so sub-wavelength fringes are
// physical. Guard: |τ| ≤ 0.45·T (callers with pulse-duration knowledge add
// the tighter scan-level guard).
SpectralField delay_field(const SpectralField& field, double tau_fs);

struct FieldStats {
  double energy = 0.0;
  double spectral_fwhm_nm = 0.0;
  double temporal_fwhm_fs = 0.0;
  double peak_wavelength_nm = 0.0;
};

// FWHMs via linear interpolation of half-max crossings, peak wavelength via
// three-point quadratic interpolation. Throws ConfigError on a zero field.
FieldStats field_stats(const SpectralField& field);

}  // namespace cpi

#endif
