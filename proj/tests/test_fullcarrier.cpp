#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cpi/correlator.hpp"
#include "fullcarrier_oracle.hpp"
#include "test_util.hpp"

using namespace cpi;
using namespace cpi_test;

TEST_CASE("baseband engine matches the full-carrier oracle on peak_block") {
  const double gdd = 3.0e4;  // reduced chirp, carrier resolvable at δt = 0.132 fs

  ExperimentSpec spec = make_preset(Preset::peak_block);
  spec.chirped.gdd_fs2 = gdd;
  spec.antichirped.gdd_fs2 = -gdd;
  spec.detector.center_wavelength_nm = 395.0;
  spec.detector.fwhm_nm = 0.5;
  spec.scan = ScanSpec{-100.0, 100.0, 2.0, ScanMode::fringe};
  Interferogram bb = scan(spec);

  OscGrid g{1 << 18, 0.132};  // ~34.6 ps window, ω_max ≈ 47.6 rad/fs
  OscEngine osc = osc_peak_block_engine(g, gdd, 2.0, 395.0, 0.5);

  std::vector<double> osc_signal;
  for (double x : bb.delays_um) osc_signal.push_back(osc.detect(x / kSpeedOfLightUmFs));

  std::vector<double> nb = affine_normalized(bb.signal);
  std::vector<double> no = affine_normalized(osc_signal);
  double linf = 0.0;
  for (size_t i = 0; i < nb.size(); ++i) linf = std::max(linf, std::abs(nb[i] - no[i]));
  CHECK(linf < 0.05);

  // Side-dip positions and depths agree within 5%.
  std::vector<Extremum> mb = local_minima(bb.delays_um, nb);
  std::vector<Extremum> mo = local_minima(bb.delays_um, no);
  REQUIRE(mb.size() == 2);
  REQUIRE(mo.size() == 2);
  for (int s = 0; s < 2; ++s) {
    CHECK(std::abs(mb[s].x - mo[s].x) < 0.05 * std::abs(mo[s].x));
    const double depth_b = 1.0 - mb[s].value;
    const double depth_o = 1.0 - mo[s].value;
    CHECK(std::abs(depth_b - depth_o) < 0.05 * depth_o);
  }
  CHECK(std::abs(mb[0].x + mb[1].x) < 1.0);  // symmetric about zero delay
}

TEST_CASE("full-carrier oracle confirms the plain peak maximum at zero delay") {
  const double gdd = 3.0e4;
  OscGrid g{1 << 17, 0.132};
  OscEngine osc = osc_peak_block_engine(g, gdd, 0.0, 395.0, 0.5);
  const double s0 = osc.detect(0.0);
  const double far = osc.detect(60.0 / kSpeedOfLightUmFs);
  CHECK(s0 > 1.5 * far);
}
