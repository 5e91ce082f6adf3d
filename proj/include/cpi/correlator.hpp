#ifndef CPI_CORRELATOR_HPP
#define CPI_CORRELATOR_HPP

#include <string>
#include <vector>

#include "cpi/elements.hpp"
#include "cpi/spectra.hpp"

namespace cpi {

inline constexpr const char* kEngineVersion = "cpi-lab v1";

enum class Preset { dip, peak, peak_block, beat, psr, whitelight };
enum class TermSelection { all, cross_only, self_only };
enum class DetectorMode { sfg_narrowband, fundamental_power };
enum class FilterShape { gaussian, rect };
enum class ScanMode { fringe, envelope };

struct DetectorSpec {
  DetectorMode mode = DetectorMode::sfg_narrowband;
  double center_wavelength_nm = 395.0;
  double fwhm_nm = 0.4;
  FilterShape shape = FilterShape::gaussian;
};

struct GridSpec {
  int n = 8192;
  double span_rad_per_fs = 0.24;
  double center_wavelength_nm = 790.0;
};

struct ScanSpec {
  double start_um = -200.0;
  double stop_um = 200.0;
  double step_um = 1.0;
  ScanMode mode = ScanMode::fringe;
};

// Declarative experiment description; presets fill every field so each
// default is visible and overridable.
struct ExperimentSpec {
  Preset preset = Preset::dip;
  GridSpec grid;
  PulseSpec chirped;
  PulseSpec antichirped;
  std::vector<MaskSpec> masks_chirped;
  std::vector<MaskSpec> masks_antichirped;
  DetectorSpec detector;
  ScanSpec scan;
  TermSelection term_selection = TermSelection::all;
  double arm_gdd_fs2 = 0.0;               // extra GDD inserted in the delay arm
  double expected_fringe_period_um = 0.0; // 0 = no fringe component expected
};

struct Interferogram {
  std::vector<double> delays_um;
  std::vector<double> signal;
  std::vector<double> envelope_low;   // envelope-mode scans only
  std::vector<double> envelope_high;  // envelope-mode scans only
  ExperimentSpec meta;
  std::string engine_version = kEngineVersion;

  bool has_envelope() const { return !envelope_low.empty(); }
};

// Wired interferometer with origin-resolved correlator arms. The fixed arm
// maps to H at the PBS, the delayed arm to V. Fields are kept separate per
// input beam so term selection can form SFG products pairwise.
struct Pipeline {
  FrequencyGrid grid;
  SpectralField fixed_c, fixed_a;      // arm 1 per origin (C, A)
  SpectralField delayed_c, delayed_a;  // arm 2 per origin, incl. arm GDD
  bool has_hwp = false;
  double hwp_deg = 0.0;
  bool has_polarizer = false;
  double polarizer_deg = 0.0;
  DetectorSpec detector;
  TermSelection terms = TermSelection::all;
  double max_abs_tau_fs = 0.0;  // window guard incl. stretched pulse extent
  Preset preset = Preset::dip;
};

void validate_spec(const ExperimentSpec& spec);

// Wiring per preset:
//   dip/beat:        C -> port 1, A -> port 2, arm 2 delayed, PBS, SFG,
//                    narrowband detection; beat adds the spectral slices.
//   peak/peak_block: C and A combined on a pre-beamsplitter whose output 1
//                    feeds port 1, port 2 vacuum; the rest as dip.
//   psr:             dip wiring plus a half-wave plate at 22.5° before SFG.
//   whitelight:      dip wiring plus a polarizer at 45°, fundamental power.
Pipeline build_pipeline(const ExperimentSpec& spec);

// Detector value at one path delay x = c·τ. Deterministic and non-negative
// for all/self term modes.
double evaluate_delay(const Pipeline& pipeline, double tau_fs);

// Origin-pairwise SFG spectra at one delay (cc, ca, ac, aa); test hook for
// the bilinearity audit. Only valid for SFG presets.
struct SfgTerms {
  SpectralField cc, ca, ac, aa;
};
SfgTerms sfg_terms(const Pipeline& pipeline, double tau_fs);

// Σ_k |ã_k|²·G(ω̃_k)·δω for sfg-narrowband, total energy for
// fundamental-power.
double detect_power(const SpectralField& field, const DetectorSpec& det);

// Fringe mode evaluates every step. Envelope mode evaluates 4 sub-offsets
// {0, λf/8, λf/4, 3λf/8} of the expected fringe period at each coarse step,
// fits a + b·cos(phase), and records a±|b|.
Interferogram scan(const ExperimentSpec& spec);

ExperimentSpec make_preset(Preset preset);

// Beat preset parameterized by the spectral-peak difference frequency
// (rad/ps); `beat` defaults to 17 rad/ps.
ExperimentSpec make_beat_spec(double peak_difference_rad_per_ps);

const char* preset_name(Preset p);
Preset preset_from_name(const std::string& name);

}  // namespace cpi

#endif
