#include "cpi/elements.hpp"

#include <cmath>

namespace cpi {

namespace {

constexpr double kDegToRad = kTwoPi / 360.0;
const complexd kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_same_mode(const SpectralField& a, const SpectralField& b,
                       const char* what) {
  if (!(a.grid == b.grid))
    throw ConfigError(std::string(what) + ": grid mismatch");
  if (a.carrier_multiple != b.carrier_multiple)
    throw ConfigError(std::string(what) + ": carrier multiple mismatch");
}

}  // namespace

PolarizedPair make_pair(SpectralField h, SpectralField v) {
  require_same_mode(h, v, "polarized pair");
  return PolarizedPair{std::move(h), std::move(v)};
}

std::pair<SpectralField, SpectralField> beamsplitter(const SpectralField& a,
                                                     const SpectralField& b) {
  require_same_mode(a, b, "beamsplitter");
  SpectralField out1 = a;
  SpectralField out2 = a;
  out1.amps = (a.amps + kI * b.amps) * kInvSqrt2;
  out2.amps = (kI * a.amps + b.amps) * kInvSqrt2;
  return {std::move(out1), std::move(out2)};
}

PolarizedPair half_wave_plate(const PolarizedPair& p, double theta_deg) {
  require_same_mode(p.h, p.v, "half_wave_plate");
  const double c2 = std::cos(2.0 * theta_deg * kDegToRad);
  const double s2 = std::sin(2.0 * theta_deg * kDegToRad);
  PolarizedPair out = p;
  out.h.amps = c2 * p.h.amps + s2 * p.v.amps;
  out.v.amps = s2 * p.h.amps - c2 * p.v.amps;
  return out;
}

SpectralField polarizer(const PolarizedPair& p, double theta_deg) {
  require_same_mode(p.h, p.v, "polarizer");
  const double c = std::cos(theta_deg * kDegToRad);
  const double s = std::sin(theta_deg * kDegToRad);
  SpectralField out = p.h;
  out.amps = c * p.h.amps + s * p.v.amps;
  return out;
}

SpectralField sfg_product(const PolarizedPair& p) {
  require_same_mode(p.h, p.v, "sfg_product");
  if (p.h.carrier_multiple != 1)
    throw ConfigError("sfg_product expects fundamental (carrier_multiple 1) inputs");

  TemporalField ht = to_time(p.h);
  TemporalField vt = to_time(p.v);
  TemporalField prod{p.h.grid, ht.samples * vt.samples, 2};
  SpectralField out = to_frequency(prod);

  const int n = out.grid.n;
  const int guard = n / 20;  // 5% of bins at each edge
  const double total = out.amps.abs2().sum();
  if (total > 0.0) {
    const double outer = out.amps.head(guard).abs2().sum() +
                         out.amps.tail(guard).abs2().sum();
    if (outer > 1e-6 * total)
      throw NumericGuardError("SFG product bandwidth overflows the grid (resolution error)");
  }
  return out;
}

}  // namespace cpi
