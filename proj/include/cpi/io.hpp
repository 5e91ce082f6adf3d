#ifndef CPI_IO_HPP
#define CPI_IO_HPP

#include <string>

#include "cpi/analysis.hpp"
#include "cpi/correlator.hpp"

namespace cpi {

// CSV contract: header `# cpi-lab v1, preset=<name>`, then
// `delay_um,signal[,envelope_low,envelope_high]`, LF line endings, `.`
// decimal separator, 17 significant digits.
void write_interferogram_csv(const std::string& path, const Interferogram& ig);

struct CsvCurve {
  Curve curve;
  std::string preset;
};

// Throws ConfigError on any schema violation.
CsvCurve read_curve_csv(const std::string& path);

// Strict JSON config: unknown keys rejected, missing keys named.
ExperimentSpec parse_config_file(const std::string& path);
ExperimentSpec parse_config_text(const std::string& text);
std::string emit_config(const ExperimentSpec& spec);

std::string metric_json(const Metric& metric);
std::string distance_json(const CurveDistance& d, bool pass);

// Self-contained static SVG line plot (delay vs signal, axes in µm and
// arbitrary units); envelope columns are drawn when present.
void write_svg(const std::string& path, const Interferogram& ig);

}  // namespace cpi

#endif
