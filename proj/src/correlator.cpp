#include "cpi/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cpi {

namespace {

const char* kPresetNames[] = {"dip", "peak", "peak_block", "beat", "psr", "whitelight"};

bool is_sfg_preset(Preset p) { return p != Preset::whitelight; }

struct ArmFields {
  SpectralField h_c, h_a;  // fixed arm -> H at the PBS
  SpectralField v_c, v_a;  // delayed arm -> V
};

ArmFields arm_fields_at(const Pipeline& p, double tau_fs) {
  ArmFields f{p.fixed_c, p.fixed_a, delay_field(p.delayed_c, tau_fs),
              delay_field(p.delayed_a, tau_fs)};
  if (p.has_hwp) {
    PolarizedPair pc = half_wave_plate(make_pair(f.h_c, f.v_c), p.hwp_deg);
    PolarizedPair pa = half_wave_plate(make_pair(f.h_a, f.v_a), p.hwp_deg);
    f.h_c = std::move(pc.h);
    f.v_c = std::move(pc.v);
    f.h_a = std::move(pa.h);
    f.v_a = std::move(pa.v);
  }
  return f;
}

SpectralField masked(SpectralField field, const std::vector<MaskSpec>& masks) {
  for (const MaskSpec& m : masks) field = apply_mask(field, m).field;
  return field;
}

double scan_point_count(const ScanSpec& s) {
  return std::floor((s.stop_um - s.start_um) / s.step_um + 1e-9) + 1.0;
}

}  // namespace

const char* preset_name(Preset p) { return kPresetNames[static_cast<int>(p)]; }

Preset preset_from_name(const std::string& name) {
  for (int i = 0; i < 6; ++i)
    if (name == kPresetNames[i]) return static_cast<Preset>(i);
  throw ConfigError("unknown preset `" + name + "`");
}

void validate_spec(const ExperimentSpec& spec) {
  // Throws on invalid grid geometry.
  FrequencyGrid grid =
      make_grid(spec.grid.n, spec.grid.center_wavelength_nm, spec.grid.span_rad_per_fs);

  if (spec.chirped.amplitude < 0.0 || spec.antichirped.amplitude < 0.0)
    throw ConfigError("pulse amplitude must be non-negative");
  if (spec.chirped.fwhm_bandwidth_nm <= 0.0 || spec.antichirped.fwhm_bandwidth_nm <= 0.0)
    throw ConfigError("fwhm_bandwidth_nm must be positive");

  for (const auto* masks : {&spec.masks_chirped, &spec.masks_antichirped})
    for (const MaskSpec& m : *masks)
      if (m.kind == MaskSpec::Kind::block && m.width_nm <= 0.0)
        throw ConfigError("mask width_nm must be positive");

  if (spec.preset == Preset::whitelight) {
    if (spec.detector.mode != DetectorMode::fundamental_power)
      throw ConfigError("preset `whitelight` requires detector mode fundamental-power");
  } else {
    if (spec.detector.mode != DetectorMode::sfg_narrowband)
      throw ConfigError(std::string("preset `") + preset_name(spec.preset) +
                        "` requires detector mode sfg-narrowband");
  }
  if (spec.detector.mode == DetectorMode::sfg_narrowband) {
    if (spec.detector.fwhm_nm <= 0.0)
      throw ConfigError("detector.fwhm_nm must be positive for sfg-narrowband");
    const double oc =
        omega_from_wavelength_nm(spec.detector.center_wavelength_nm) - 2.0 * grid.carrier;
    if (std::abs(oc) > 0.5 * grid.span())
      throw ConfigError("detector.center_wavelength_nm sits outside the SFG grid span");
  }

  if (spec.scan.step_um <= 0.0) throw ConfigError("scan.step_um must be positive");
  if (spec.scan.stop_um <= spec.scan.start_um)
    throw ConfigError("scan range is empty: scan.stop_um must exceed scan.start_um");
  if (scan_point_count(spec.scan) > 200000.0)
    throw ConfigError("scan.step_um yields more than 200000 points");
  if (spec.expected_fringe_period_um < 0.0)
    throw ConfigError("expected_fringe_period_um must be non-negative");
}

Pipeline build_pipeline(const ExperimentSpec& spec) {
  validate_spec(spec);
  FrequencyGrid grid =
      make_grid(spec.grid.n, spec.grid.center_wavelength_nm, spec.grid.span_rad_per_fs);

  SpectralField c_beam = masked(synthesize_pulse(grid, spec.chirped), spec.masks_chirped);
  SpectralField a_beam =
      masked(synthesize_pulse(grid, spec.antichirped), spec.masks_antichirped);
  SpectralField vac = zero_field(grid);

  Pipeline p;
  p.grid = grid;
  p.detector = spec.detector;
  p.terms = spec.term_selection;
  p.preset = spec.preset;

  if (spec.preset == Preset::peak || spec.preset == Preset::peak_block) {
    // Pre-beamsplitter combines the beams; output 1 feeds correlator port 1.
    SpectralField pre_c = beamsplitter(c_beam, vac).first;
    SpectralField pre_a = beamsplitter(vac, a_beam).first;
    auto arms_c = beamsplitter(pre_c, vac);
    auto arms_a = beamsplitter(pre_a, vac);
    p.fixed_c = std::move(arms_c.first);
    p.delayed_c = std::move(arms_c.second);
    p.fixed_a = std::move(arms_a.first);
    p.delayed_a = std::move(arms_a.second);
  } else {
    auto arms_c = beamsplitter(c_beam, vac);
    auto arms_a = beamsplitter(vac, a_beam);
    p.fixed_c = std::move(arms_c.first);
    p.delayed_c = std::move(arms_c.second);
    p.fixed_a = std::move(arms_a.first);
    p.delayed_a = std::move(arms_a.second);
  }

  if (spec.arm_gdd_fs2 != 0.0) {
    p.delayed_c = apply_chirp(p.delayed_c, spec.arm_gdd_fs2);
    p.delayed_a = apply_chirp(p.delayed_a, spec.arm_gdd_fs2);
  }

  p.has_hwp = spec.preset == Preset::psr;
  p.hwp_deg = 22.5;
  p.has_polarizer = spec.preset == Preset::whitelight;
  p.polarizer_deg = 45.0;

  const double pulse_extent =
      std::max(stretched_fwhm_fs(spec.chirped), stretched_fwhm_fs(spec.antichirped));
  p.max_abs_tau_fs = 0.45 * grid.time_window() - 0.75 * pulse_extent;
  if (p.max_abs_tau_fs <= 0.0)
    throw NumericGuardError("stretched pulses do not fit the time window (aliasing error)");
  return p;
}

double detect_power(const SpectralField& field, const DetectorSpec& det) {
  if (det.mode == DetectorMode::fundamental_power) return field.energy();

  const FrequencyGrid& g = field.grid;
  const double oc = omega_from_wavelength_nm(det.center_wavelength_nm) -
                    field.carrier_multiple * g.carrier;
  const double fw = omega_width_from_nm(det.fwhm_nm, det.center_wavelength_nm);
  const double half_extent =
      det.shape == FilterShape::rect ? 0.5 * fw : 2.0 * fw / kFwhmSigmaRatio;
  if (std::abs(oc) + half_extent > 0.5 * g.span())
    throw ConfigError("detector window outside grid span");

  double acc = 0.0;
  if (det.shape == FilterShape::rect) {
    for (int k = 0; k < g.n; ++k)
      if (std::abs(g.detuning(k) - oc) <= 0.5 * fw) acc += std::norm(field.amps(k));
  } else {
    const double sigma = fw / kFwhmSigmaRatio;
    for (int k = 0; k < g.n; ++k) {
      const double d = g.detuning(k) - oc;
      acc += std::norm(field.amps(k)) * std::exp(-d * d / (2.0 * sigma * sigma));
    }
  }
  return acc * g.delta_omega;
}

SfgTerms sfg_terms(const Pipeline& p, double tau_fs) {
  ArmFields f = arm_fields_at(p, tau_fs);
  return SfgTerms{sfg_product(make_pair(f.h_c, f.v_c)), sfg_product(make_pair(f.h_c, f.v_a)),
                  sfg_product(make_pair(f.h_a, f.v_c)), sfg_product(make_pair(f.h_a, f.v_a))};
}

double evaluate_delay(const Pipeline& p, double tau_fs) {
  if (std::abs(tau_fs) > p.max_abs_tau_fs)
    throw NumericGuardError("delay outside the window guard (aliasing error)");

  ArmFields f = arm_fields_at(p, tau_fs);

  if (p.has_polarizer) {
    SpectralField ec = polarizer(make_pair(f.h_c, f.v_c), p.polarizer_deg);
    SpectralField ea = polarizer(make_pair(f.h_a, f.v_a), p.polarizer_deg);
    switch (p.terms) {
      case TermSelection::all: {
        ec.amps += ea.amps;
        return detect_power(ec, p.detector);
      }
      case TermSelection::self_only:
        return detect_power(ec, p.detector) + detect_power(ea, p.detector);
      case TermSelection::cross_only: {
        const double self = detect_power(ec, p.detector) + detect_power(ea, p.detector);
        ec.amps += ea.amps;
        return detect_power(ec, p.detector) - self;
      }
    }
  }

  switch (p.terms) {
    case TermSelection::all: {
      SpectralField h = f.h_c;
      h.amps += f.h_a.amps;
      SpectralField v = f.v_c;
      v.amps += f.v_a.amps;
      return detect_power(sfg_product(make_pair(std::move(h), std::move(v))), p.detector);
    }
    case TermSelection::cross_only: {
      SpectralField s = sfg_product(make_pair(f.h_c, f.v_a));
      s.amps += sfg_product(make_pair(f.h_a, f.v_c)).amps;
      return detect_power(s, p.detector);
    }
    case TermSelection::self_only: {
      SpectralField s = sfg_product(make_pair(f.h_c, f.v_c));
      s.amps += sfg_product(make_pair(f.h_a, f.v_a)).amps;
      return detect_power(s, p.detector);
    }
  }
  return 0.0;  // unreachable
}

Interferogram scan(const ExperimentSpec& spec) {
  Pipeline p = build_pipeline(spec);
  const ScanSpec& s = spec.scan;
  const int count = static_cast<int>(scan_point_count(s));
  const double lf = spec.expected_fringe_period_um;

  double max_abs_x = std::max(std::abs(s.start_um),
                              std::abs(s.start_um + (count - 1) * s.step_um));

  if (s.mode == ScanMode::fringe) {
    if (lf > 0.0 && s.step_um > lf / 8.0 * (1.0 + 1e-12))
      throw NumericGuardError(
          "fringe-mode undersampling: scan.step_um must not exceed an eighth of "
          "the expected fringe period");
  } else {
    if (lf <= 0.0)
      throw ConfigError("envelope mode requires expected_fringe_period_um > 0");
    max_abs_x += 0.375 * lf;
  }
  if (max_abs_x / kSpeedOfLightUmFs > p.max_abs_tau_fs)
    throw NumericGuardError("scan range exceeds the time-window guard (aliasing error)");

  Interferogram out;
  out.meta = spec;
  out.delays_um.reserve(count);
  out.signal.reserve(count);

  if (s.mode == ScanMode::fringe) {
    for (int i = 0; i < count; ++i) {
      const double x = s.start_um + i * s.step_um;
      out.delays_um.push_back(x);
      out.signal.push_back(evaluate_delay(p, x / kSpeedOfLightUmFs));
    }
    return out;
  }

  // Envelope mode: quadrature sub-sampling, then a + b·cos(phase) per step.
  const double offsets[4] = {0.0, lf / 8.0, lf / 4.0, 3.0 * lf / 8.0};
  Eigen::Matrix<double, 4, 3> basis;
  for (int j = 0; j < 4; ++j) {
    const double phi = kTwoPi * offsets[j] / lf;
    basis(j, 0) = 1.0;
    basis(j, 1) = std::cos(phi);
    basis(j, 2) = std::sin(phi);
  }
  out.envelope_low.reserve(count);
  out.envelope_high.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x = s.start_um + i * s.step_um;
    Eigen::Vector4d vals;
    for (int j = 0; j < 4; ++j)
      vals(j) = evaluate_delay(p, (x + offsets[j]) / kSpeedOfLightUmFs);
    Eigen::Vector3d fit = basis.colPivHouseholderQr().solve(vals);
    const double a = fit(0);
    const double b = std::hypot(fit(1), fit(2));
    out.delays_um.push_back(x);
    out.signal.push_back(a);
    out.envelope_low.push_back(a - b);
    out.envelope_high.push_back(a + b);
  }
  return out;
}

ExperimentSpec make_beat_spec(double peak_difference_rad_per_ps) {
  ExperimentSpec spec;
  spec.preset = Preset::beat;
  spec.chirped = PulseSpec{790.0, 10.0, 1.79e6, 1.0};
  spec.antichirped = PulseSpec{790.0, 10.0, -1.79e6, 1.0};
  spec.detector = DetectorSpec{DetectorMode::sfg_narrowband, 395.0, 0.3, FilterShape::gaussian};

  // Spectral slices (razor pair per beam). Peaks sit at the slice edges
  // nearest the carrier, so the slice centers are pushed apart by half the
  // mean slice width to land the peak separation on the requested value.
  const double target = peak_difference_rad_per_ps * 1e-3;  // rad/fs
  const double width_c_nm = 0.05, width_a_nm = 0.04;
  const double bc = omega_width_from_nm(width_c_nm, 790.0);
  const double ba = omega_width_from_nm(width_a_nm, 790.0);
  const double delta = 0.5 * (target + 0.5 * (bc + ba));
  const double carrier = omega_from_wavelength_nm(790.0);

  auto lam = [&](double detuning) { return wavelength_nm_from_omega(carrier + detuning); };
  // Chirped beam keeps the red-side slice [-delta - bc/2, -delta + bc/2].
  spec.masks_chirped = {
      MaskSpec::edge(lam(-delta + 0.5 * bc), MaskSpec::Keep::red_side),
      MaskSpec::edge(lam(-delta - 0.5 * bc), MaskSpec::Keep::blue_side)};
  // Anti-chirped beam keeps the blue-side slice [delta - ba/2, delta + ba/2].
  spec.masks_antichirped = {
      MaskSpec::edge(lam(delta - 0.5 * ba), MaskSpec::Keep::blue_side),
      MaskSpec::edge(lam(delta + 0.5 * ba), MaskSpec::Keep::red_side)};

  spec.scan = ScanSpec{-600.0, 600.0, 3.0, ScanMode::fringe};
  spec.expected_fringe_period_um = kTwoPi * kSpeedOfLightUmFs / target;
  return spec;
}

ExperimentSpec make_preset(Preset preset) {
  ExperimentSpec spec;
  spec.preset = preset;
  spec.chirped = PulseSpec{790.0, 10.0, 1.79e6, 1.0};
  spec.antichirped = PulseSpec{790.0, 10.0, -1.79e6, 1.0};

  switch (preset) {
    case Preset::dip:
      spec.detector = DetectorSpec{DetectorMode::sfg_narrowband, 395.0, 0.4,
                                   FilterShape::gaussian};
      spec.scan = ScanSpec{-200.0, 200.0, 1.0, ScanMode::fringe};
      break;
    case Preset::peak:
      spec.detector = DetectorSpec{DetectorMode::sfg_narrowband, 395.2, 0.4,
                                   FilterShape::gaussian};
      spec.scan = ScanSpec{-200.0, 200.0, 1.0, ScanMode::fringe};
      break;
    case Preset::peak_block:
      spec.detector = DetectorSpec{DetectorMode::sfg_narrowband, 395.2, 0.4,
                                   FilterShape::gaussian};
      spec.masks_chirped = {MaskSpec::block(790.0, 2.0)};
      spec.scan = ScanSpec{-150.0, 150.0, 0.75, ScanMode::fringe};
      break;
    case Preset::beat:
      return make_beat_spec(17.0);
    case Preset::psr:
      spec.detector = DetectorSpec{DetectorMode::sfg_narrowband, 395.0, 0.09,
                                   FilterShape::gaussian};
      spec.scan = ScanSpec{-15000.0, 15000.0, 30.0, ScanMode::envelope};
      spec.expected_fringe_period_um = 0.395;
      break;
    case Preset::whitelight:
      // White-light reference from the chirped pulse alone.
      spec.antichirped.amplitude = 0.0;
      spec.detector = DetectorSpec{DetectorMode::fundamental_power, 790.0, 0.0,
                                   FilterShape::gaussian};
      spec.scan = ScanSpec{-150.0, 150.0, 2.0, ScanMode::envelope};
      spec.expected_fringe_period_um = 0.790;
      break;
  }
  return spec;
}

}  // namespace cpi
