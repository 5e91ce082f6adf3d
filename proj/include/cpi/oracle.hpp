#ifndef CPI_ORACLE_HPP
#define CPI_ORACLE_HPP

#include <optional>
#include <variant>
#include <vector>

#include "cpi/spectra.hpp"

namespace cpi {

// Gaussian per-arm detection filter on the JSA detuning axis; intensity
// response exp(-(ω̃ - center)²/(2σ²)) with σ = fwhm/(2·sqrt(2 ln 2)).
struct GaussianFilter {
  double center_rad_fs = 0.0;
  double fwhm_rad_fs = 0.0;
};

// Per-arm filter: none, Gaussian, or a hard-edged MaskSpec mapped through
// the carrier.
using JsaFilter = std::variant<std::monostate, GaussianFilter, MaskSpec>;

struct JsaParams {
  int m = 256;
  double span_rad_fs = 0.0;  // 0 -> sized automatically from the widths
  double pump_fwhm_rad_fs = 0.0;      // 0 -> marginal/50
  double marginal_fwhm_rad_fs = 0.0;  // intensity FWHM
  JsaFilter filter1;
  JsaFilter filter2;
  double carrier = 0.0;  // ω₀, rad/fs (mask mapping and NOON fringes)
};

// Discrete two-photon amplitude on an m×m detuning grid about ω₀.
// `jsa` is the filtered, normalized amplitude (ΣΣ|f|²·δω² = 1); `core`
// is the unfiltered pump×marginal factor on the same normalization scale,
// and w1/w2 are the per-arm intensity responses used as detection weights.
struct JointSpectralAmplitude {
  int m = 0;
  double delta_omega = 0.0;
  double carrier = 0.0;
  Eigen::ArrayXXcd jsa;
  Eigen::ArrayXXcd core;
  ArrayXd w1, w2;

  double detuning(int k) const { return (k - m / 2) * delta_omega; }
};

// f(ω̃₁,ω̃₂) ∝ exp(-(ω̃₁+ω̃₂)²/4σ_p²)·exp(-(ω̃₁²+ω̃₂²)/4σ_m²)·F₁(ω̃₁)F₂(ω̃₂).
// Throws ConfigError when the widths are unresolvable on the m-grid.
JointSpectralAmplitude build_jsa(const JsaParams& params);

enum class PortMode { opposite, same };

// Exchange interference term
//   V(τ) = ΣΣ W₁(ω̃₁)W₂(ω̃₂)·f₀(ω̃₁,ω̃₂)·conj(f₀(ω̃₂,ω̃₁))·e^{i(ω̃₁-ω̃₂)τ}·δω² / N
// with the detection weights held at their detector arguments (they do not
// ride through the exchange) and N normalizing V(0) = 1 for an
// exchange-symmetric JSA.
complexd coincidence_v(const JointSpectralAmplitude& jsa, double tau_fs);

// P(τ) = ½·[1 ∓ Re V(τ)]; minus for opposite ports (dip), plus for the
// same port (peak).
std::vector<double> coincidence_scan(const JointSpectralAmplitude& jsa,
                                     const std::vector<double>& delays_fs,
                                     PortMode port_mode);

// P(τ) = ½·[1 - env(τ)·cos(2ω₀τ)] with env(τ) = |Σ|s(ω̃)|²·e^{2iω̃τ}·δω̃| for
// a Gaussian marginal spectrum s; fringes at half the single-photon period.
std::vector<double> noon_scan(double marginal_fwhm_rad_fs, double carrier,
                              const std::vector<double>& delays_fs, int m = 256);

}  // namespace cpi

#endif
