#include "cpi/oracle.hpp"

#include <cmath>

namespace cpi {

namespace {

// Amplitude response of a per-arm filter at detuning w.
double filter_amplitude(const JsaFilter& f, double w, double carrier) {
  if (std::holds_alternative<std::monostate>(f)) return 1.0;
  if (const auto* gf = std::get_if<GaussianFilter>(&f)) {
    const double sigma = gf->fwhm_rad_fs / kFwhmSigmaRatio;
    const double d = w - gf->center_rad_fs;
    return std::exp(-d * d / (4.0 * sigma * sigma));  // sqrt of the intensity response
  }
  const MaskSpec& m = std::get<MaskSpec>(f);
  const double lam = wavelength_nm_from_omega(carrier + w);
  switch (m.kind) {
    case MaskSpec::Kind::block:
      return (lam >= m.center_nm - 0.5 * m.width_nm && lam <= m.center_nm + 0.5 * m.width_nm)
                 ? 0.0
                 : 1.0;
    case MaskSpec::Kind::edge: {
      const bool keep_red = m.keep == MaskSpec::Keep::red_side;
      return (keep_red ? lam > m.cutoff_nm : lam < m.cutoff_nm) ? 1.0 : 0.0;
    }
  }
  return 1.0;
}

double filter_extent(const JsaFilter& f) {
  if (const auto* gf = std::get_if<GaussianFilter>(&f))
    return std::abs(gf->center_rad_fs) + 2.0 * gf->fwhm_rad_fs;
  return 0.0;
}

}  // namespace

JointSpectralAmplitude build_jsa(const JsaParams& params) {
  if (params.m < 64) throw ConfigError("jsa grid needs m >= 64");
  if (params.marginal_fwhm_rad_fs <= 0.0)
    throw ConfigError("jsa marginal_fwhm_rad_fs must be positive");
  if (params.carrier <= 0.0) throw ConfigError("jsa carrier must be positive");

  const double sigma_m = params.marginal_fwhm_rad_fs / kFwhmSigmaRatio;
  const double pump_fwhm = params.pump_fwhm_rad_fs > 0.0 ? params.pump_fwhm_rad_fs
                                                         : params.marginal_fwhm_rad_fs / 50.0;
  const double sigma_p = pump_fwhm / kFwhmSigmaRatio;

  double span = params.span_rad_fs;
  if (span <= 0.0)
    span = 2.0 * (4.0 * sigma_m +
                  std::max(filter_extent(params.filter1), filter_extent(params.filter2)));

  const double h = span / params.m;
  // The marginal and any Gaussian filter must be resolvable; the pump is
  // modeled narrow by construction and cancels in normalized quantities.
  double min_width = sigma_m;
  for (const JsaFilter* f : {&params.filter1, &params.filter2})
    if (const auto* gf = std::get_if<GaussianFilter>(f))
      min_width = std::min(min_width, gf->fwhm_rad_fs / kFwhmSigmaRatio);
  if (min_width < 2.0 * h)
    throw ConfigError("jsa widths unresolvable on the m-grid: enlarge m or shrink span");

  JointSpectralAmplitude out;
  out.m = params.m;
  out.delta_omega = h;
  out.carrier = params.carrier;
  out.core.resize(params.m, params.m);
  out.jsa.resize(params.m, params.m);
  out.w1.resize(params.m);
  out.w2.resize(params.m);

  ArrayXd f1(params.m), f2(params.m);
  for (int k = 0; k < params.m; ++k) {
    const double w = out.detuning(k);
    f1(k) = filter_amplitude(params.filter1, w, params.carrier);
    f2(k) = filter_amplitude(params.filter2, w, params.carrier);
  }
  out.w1 = f1.square();
  out.w2 = f2.square();

  for (int i = 0; i < params.m; ++i) {
    const double w1 = out.detuning(i);
    for (int j = 0; j < params.m; ++j) {
      const double w2 = out.detuning(j);
      const double sum = w1 + w2;
      const double pump = std::exp(-sum * sum / (4.0 * sigma_p * sigma_p));
      const double marg = std::exp(-(w1 * w1 + w2 * w2) / (4.0 * sigma_m * sigma_m));
      out.core(i, j) = pump * marg;
      out.jsa(i, j) = pump * marg * f1(i) * f2(j);
    }
  }

  const double norm2 = out.jsa.abs2().sum() * h * h;
  if (norm2 <= 0.0) throw ConfigError("jsa vanishes after filtering");
  const double scale = 1.0 / std::sqrt(norm2);
  out.jsa *= scale;
  out.core *= scale;
  return out;
}

complexd coincidence_v(const JointSpectralAmplitude& jsa, double tau_fs) {
  const int m = jsa.m;
  // V(τ) = uᴴ·M·u(τ) with M_kl = W₁(k)W₂(l)·f₀(k,l)·conj(f₀(l,k)) and
  // u_l = e^{-iω̃_l τ}; evaluated as two passes to keep it O(m²).
  Eigen::ArrayXcd phase(m);
  for (int k = 0; k < m; ++k)
    phase(k) = std::polar(1.0, jsa.detuning(k) * tau_fs);

  complexd num(0.0, 0.0);
  double den = 0.0;
  for (int i = 0; i < m; ++i) {
    complexd row(0.0, 0.0);
    double rowden = 0.0;
    for (int j = 0; j < m; ++j) {
      const complexd w = jsa.w2(j) * jsa.core(i, j) * std::conj(jsa.core(j, i));
      row += w * std::conj(phase(j));
      rowden += jsa.w2(j) * 0.5 *
                (std::norm(jsa.core(i, j)) + std::norm(jsa.core(j, i)));
    }
    num += jsa.w1(i) * phase(i) * row;
    den += jsa.w1(i) * rowden;
  }
  if (den <= 0.0) throw ConfigError("jsa carries no weight under the detection filters");
  return num / den;
}

std::vector<double> coincidence_scan(const JointSpectralAmplitude& jsa,
                                     const std::vector<double>& delays_fs,
                                     PortMode port_mode) {
  std::vector<double> p;
  p.reserve(delays_fs.size());
  const double sign = port_mode == PortMode::opposite ? -1.0 : 1.0;
  for (double tau : delays_fs)
    p.push_back(0.5 * (1.0 + sign * coincidence_v(jsa, tau).real()));
  return p;
}

std::vector<double> noon_scan(double marginal_fwhm_rad_fs, double carrier,
                              const std::vector<double>& delays_fs, int m) {
  if (marginal_fwhm_rad_fs <= 0.0)
    throw ConfigError("noon marginal_fwhm_rad_fs must be positive");
  const double sigma = marginal_fwhm_rad_fs / kFwhmSigmaRatio;
  const double span = 16.0 * sigma;
  const double h = span / m;

  ArrayXd w(m), s2(m);
  for (int k = 0; k < m; ++k) {
    w(k) = (k - m / 2) * h;
    s2(k) = std::exp(-w(k) * w(k) / (2.0 * sigma * sigma));
  }
  const double norm = s2.sum() * h;

  std::vector<double> p;
  p.reserve(delays_fs.size());
  for (double tau : delays_fs) {
    complexd acc(0.0, 0.0);
    for (int k = 0; k < m; ++k) acc += s2(k) * std::polar(1.0, 2.0 * w(k) * tau);
    const double env = std::abs(acc) * h / norm;
    p.push_back(0.5 * (1.0 - env * std::cos(2.0 * carrier * tau)));
  }
  return p;
}

}  // namespace cpi
