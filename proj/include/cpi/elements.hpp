#ifndef CPI_ELEMENTS_HPP
#define CPI_ELEMENTS_HPP

#include <utility>

#include "cpi/spectra.hpp"

namespace cpi {

// H/V field pair in one spatial mode; the state entering the HWP/polarizer/
// SFG stage. Both fields share one grid and one carrier multiple.
struct PolarizedPair {
  SpectralField h;
  SpectralField v;
};

PolarizedPair make_pair(SpectralField h, SpectralField v);

// Symmetric 50:50 convention, fixed globally:
//   out1 = (a + i·b)/√2,  out2 = (i·a + b)/√2.
// Feed an explicit zero field for a vacuum port.
std::pair<SpectralField, SpectralField> beamsplitter(const SpectralField& a,
                                                     const SpectralField& b);

// Jones action [[cos2θ, sin2θ], [sin2θ, -cos2θ]] applied bin-wise.
PolarizedPair half_wave_plate(const PolarizedPair& p, double theta_deg);

// Projection cosθ·h + sinθ·v; a contraction.
SpectralField polarizer(const PolarizedPair& p, double theta_deg);

// Time-domain sample-wise product of the H and V envelopes, tagged with
// carrier 2ω₀. χ⁽²⁾ response is flat and instantaneous; output units are
// arbitrary. Guard: product spectrum energy in the outer 10% of bins must
// stay below 1e-6 of the total.
SpectralField sfg_product(const PolarizedPair& p);

}  // namespace cpi

#endif
