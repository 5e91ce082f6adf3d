#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cpi/analysis.hpp"
#include "cpi/oracle.hpp"
#include "test_util.hpp"

using namespace cpi;
using namespace cpi_test;

namespace {

const double kCarrier = omega_from_wavelength_nm(790.0);

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

JsaParams plain_params(double marginal_fwhm) {
  JsaParams p;
  p.marginal_fwhm_rad_fs = marginal_fwhm;
  p.carrier = kCarrier;
  return p;
}

// Closed-form Re V(τ) for a Gaussian marginal and offset Gaussian filters
// with intensity responses exp(-(ω∓δ)²/2σ_w²):
//   Re V(τ) = exp(-τ²/4β)·cos(δτ/(2βσ_w²)),  β = 1/(4σ_m²) + 1/(4σ_w²).
double closed_form_re_v(double tau, double sigma_m, double sigma_w, double delta) {
  const double beta = 0.25 / (sigma_m * sigma_m) + 0.25 / (sigma_w * sigma_w);
  return std::exp(-tau * tau / (4.0 * beta)) *
         std::cos(delta * tau / (2.0 * beta * sigma_w * sigma_w));
}

}  // namespace

TEST_CASE("jsa is normalized and exchange-symmetric without filters") {
  JointSpectralAmplitude jsa = build_jsa(plain_params(0.03));
  const double norm = jsa.jsa.abs2().sum() * jsa.delta_omega * jsa.delta_omega;
  CHECK(std::abs(norm - 1.0) < 1e-10);
  for (int i = 0; i < jsa.m; i += 17)
    for (int j = 0; j < jsa.m; j += 13)
      CHECK(jsa.jsa(i, j) == jsa.jsa(j, i));
}

TEST_CASE("narrow pump confines the jsa to the anti-diagonal") {
  JsaParams p = plain_params(0.03);
  p.pump_fwhm_rad_fs = 0.03 / 500.0;
  JointSpectralAmplitude jsa = build_jsa(p);
  const int q = jsa.m / 4;
  CHECK(std::abs(jsa.jsa(q, jsa.m - q)) > 1e3 * std::abs(jsa.jsa(q, q)));
}

TEST_CASE("offset filters break exchange symmetry") {
  JsaParams p = plain_params(0.03);
  const double sigma = 0.03 / kFwhmSigmaRatio;
  p.filter1 = GaussianFilter{+sigma, 0.02};
  p.filter2 = GaussianFilter{-sigma, 0.02};
  JointSpectralAmplitude jsa = build_jsa(p);
  const int a = jsa.m / 2 + jsa.m / 8, b = jsa.m / 2 - jsa.m / 8;
  CHECK(std::abs(jsa.jsa(a, b)) > 10.0 * std::abs(jsa.jsa(b, a)));
}

TEST_CASE("unresolvable widths are rejected") {
  JsaParams p = plain_params(0.03);
  p.span_rad_fs = 10.0;  // bins far coarser than the marginal
  CHECK_THROWS_AS(build_jsa(p), ConfigError);
  JsaParams q = plain_params(0.03);
  q.m = 32;
  CHECK_THROWS_AS(build_jsa(q), ConfigError);
}

TEST_CASE("exchange-symmetric jsa gives a perfect dip and peak at zero delay") {
  JointSpectralAmplitude jsa = build_jsa(plain_params(0.0301819));
  std::vector<double> zero{0.0};
  CHECK(coincidence_scan(jsa, zero, PortMode::opposite)[0] ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(coincidence_scan(jsa, zero, PortMode::same)[0] ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(coincidence_v(jsa, 0.0) - complexd(1.0, 0.0)) < 1e-12);
}

TEST_CASE("coincidence probabilities stay in [0,1] and complement exactly") {
  JsaParams p = plain_params(0.0301819);
  p.filter1 = GaussianFilter{+0.008, 0.01};
  p.filter2 = GaussianFilter{-0.008, 0.01};
  JointSpectralAmplitude jsa = build_jsa(p);
  std::vector<double> delays = linspace(-2000.0, 2000.0, 201);
  std::vector<double> dip = coincidence_scan(jsa, delays, PortMode::opposite);
  std::vector<double> peak = coincidence_scan(jsa, delays, PortMode::same);
  for (size_t i = 0; i < delays.size(); ++i) {
    CHECK(dip[i] >= -1e-12);
    CHECK(dip[i] <= 1.0 + 1e-12);
    CHECK(peak[i] >= -1e-12);
    CHECK(peak[i] <= 1.0 + 1e-12);
    const double re_v = coincidence_v(jsa, delays[i]).real();
    CHECK(peak[i] - dip[i] == doctest::Approx(re_v).epsilon(1e-12));
  }
}

TEST_CASE("interference dies off at ten coherence times") {
  const double fwhm = 0.0301819;
  JointSpectralAmplitude jsa = build_jsa(plain_params(fwhm));
  const double sigma_m = fwhm / kFwhmSigmaRatio;
  CHECK(std::abs(coincidence_v(jsa, 10.0 / sigma_m)) < 1e-3);
}

TEST_CASE("beat oracle matches the closed-form Gaussian integral") {
  const double sigma_m = 0.04;            // broad marginal
  const double sigma_w = sigma_m / 20.0;  // narrow offset filters
  const double delta = 6.0 * sigma_w;
  JsaParams p;
  p.m = 512;  // resolve the narrow filters
  p.carrier = kCarrier;
  p.marginal_fwhm_rad_fs = sigma_m * kFwhmSigmaRatio;
  p.filter1 = GaussianFilter{+delta, sigma_w * kFwhmSigmaRatio};
  p.filter2 = GaussianFilter{-delta, sigma_w * kFwhmSigmaRatio};
  p.span_rad_fs = 8.0 * sigma_m;
  JointSpectralAmplitude jsa = build_jsa(p);

  std::vector<double> delays = linspace(-1500.0, 1500.0, 301);
  double linf = 0.0;
  for (double tau : delays) {
    const double got = coincidence_v(jsa, tau).real();
    const double expect = closed_form_re_v(tau, sigma_m, sigma_w, delta);
    linf = std::max(linf, std::abs(got - expect));
  }
  CHECK(linf < 1e-9);

  // Fringe period within 1% of 2π/Δω when the filters are much narrower
  // than the marginal (the exact period carries a 1/(1+σ_w²/σ_m²) pull).
  Curve c;
  c.x = linspace(-1500.0 * kSpeedOfLightUmFs, 1500.0 * kSpeedOfLightUmFs, 301);
  c.y = coincidence_scan(jsa, delays, PortMode::opposite);
  Metric m = fringe_period(c);
  const double expected_period_um = kTwoPi / (2.0 * delta) * kSpeedOfLightUmFs;
  CHECK(rel_err(m.value, expected_period_um) < 0.01);
}

TEST_CASE("noon scan: zero at zero delay, fringes at half the period") {
  const double fwhm = 0.0301819;
  std::vector<double> delays =
      linspace(-4.0 / kSpeedOfLightUmFs, 4.0 / kSpeedOfLightUmFs, 401);
  std::vector<double> p = noon_scan(fwhm, kCarrier, delays);
  CHECK(p[200] == doctest::Approx(0.0).epsilon(1e-12));  // τ = 0
  for (double v : p) {
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }

  Curve c;
  c.x.resize(delays.size());
  for (size_t i = 0; i < delays.size(); ++i) c.x[i] = delays[i] * kSpeedOfLightUmFs;
  c.y = p;
  Metric m = fringe_period(c);
  CHECK(rel_err(m.value, 0.790 / 2.0) < 0.005);
}

TEST_CASE("noon envelope is half the one-photon coherence envelope") {
  // Gaussian Fourier-pair oracle: env(τ) = exp(-2σ²τ²) has half the FWHM of
  // exp(-σ²τ²/2).
  const double fwhm = 0.0301819;
  const double sigma = fwhm / kFwhmSigmaRatio;
  const double noon_expected = 2.0 * std::sqrt(std::log(2.0) / 2.0) / sigma;
  const double one_photon = 2.0 * std::sqrt(2.0 * std::log(2.0)) / sigma;
  CHECK(rel_err(one_photon / noon_expected, 2.0) < 1e-12);

  // Numeric envelope from the noon curve via |1-2P| fringe crests.
  std::vector<double> taus = linspace(-200.0, 200.0, 4001);
  std::vector<double> p = noon_scan(fwhm, kCarrier, taus);
  std::vector<double> env(taus.size());
  for (size_t i = 0; i < taus.size(); ++i) env[i] = std::abs(1.0 - 2.0 * p[i]);
  std::vector<double> crest(taus.size(), 0.0);
  const int w = 8;
  for (size_t i = w; i + w < taus.size(); ++i)
    for (int j = -w; j <= w; ++j) crest[i] = std::max(crest[i], env[i + j]);
  const double fwhm_meas = feature_fwhm(taus, crest);
  CHECK(rel_err(fwhm_meas, noon_expected) < 0.03);
}
