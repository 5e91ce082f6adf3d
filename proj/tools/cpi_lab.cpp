// cpi-lab: chirped-pulse interferometry simulator.
//
// Subcommands:
//   run <config> -o <csv> [--svg <file>]   simulate one experiment
//   preset <name>                          print a complete config document
//   analyze <csv> --metric <m> [--window a,b]
//   compare <classical.csv> <quantum.csv>
//
// Exit codes: 0 ok, 2 invalid config / malformed CSV, 3 numerical guard
// tripped (aliasing/resolution/undersampling), 4 metric preconditions unmet,
// 5 comparison failed.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cpi/io.hpp"

namespace {

cpi::ExperimentSpec load_spec(const std::string& config_arg) {
  const std::string tag = "preset:";
  if (config_arg.rfind(tag, 0) == 0)
    return cpi::make_preset(cpi::preset_from_name(config_arg.substr(tag.size())));
  return cpi::parse_config_file(config_arg);
}

int cmd_run(const std::string& config, const std::string& out_csv,
            const std::string& out_svg) {
  cpi::ExperimentSpec spec = load_spec(config);
  cpi::Interferogram ig = cpi::scan(spec);
  cpi::write_interferogram_csv(out_csv, ig);
  if (!out_svg.empty()) cpi::write_svg(out_svg, ig);
  return 0;
}

int cmd_preset(const std::string& name) {
  std::cout << cpi::emit_config(cpi::make_preset(cpi::preset_from_name(name)));
  return 0;
}

int cmd_analyze(const std::string& csv, const std::string& metric,
                const std::optional<std::pair<double, double>>& window) {
  cpi::CsvCurve data = cpi::read_curve_csv(csv);
  std::optional<cpi::Window> w;
  if (window) w = cpi::Window{window->first, window->second};

  cpi::Metric m;
  if (metric == "visibility")
    m = cpi::visibility(data.curve, w);
  else if (metric == "period")
    m = cpi::fringe_period(data.curve, w);
  else if (metric == "fwhm")
    m = cpi::envelope_fwhm(data.curve);
  else
    throw cpi::ConfigError("metric must be visibility, period or fwhm");
  std::cout << cpi::metric_json(m);
  return 0;
}

int cmd_compare(const std::string& csv_a, const std::string& csv_b) {
  cpi::CsvCurve a = cpi::read_curve_csv(csv_a);
  cpi::CsvCurve b = cpi::read_curve_csv(csv_b);
  cpi::CurveDistance d = cpi::curve_distance(a.curve, b.curve);
  const bool pass = d.l_inf <= 0.05;
  std::cout << cpi::distance_json(d, pass);
  return pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpi-lab: classical chirped-pulse interferometry simulator"};
  app.require_subcommand(1);

  std::string config, out_csv, out_svg, preset, csv, metric = "visibility";
  std::string csv_a, csv_b;
  std::pair<double, double> window_pair;
  bool have_window = false;

  CLI::App* run = app.add_subcommand("run", "simulate an experiment and write CSV");
  run->add_option("config", config,
                  "config JSON path, or preset:<name> for built-in defaults")
      ->required();
  run->add_option("-o,--output", out_csv, "output CSV path")->required();
  run->add_option("--svg", out_svg, "optional SVG plot path");

  CLI::App* pre = app.add_subcommand("preset", "print a complete preset config");
  pre->add_option("name", preset, "dip|peak|peak_block|beat|psr|whitelight")->required();

  CLI::App* ana = app.add_subcommand("analyze", "compute a metric from a CSV");
  ana->add_option("csv", csv, "interferogram CSV")->required();
  ana->add_option("--metric", metric, "visibility|period|fwhm")->required();
  CLI::Option* wopt =
      ana->add_option("--window", window_pair, "delay window a,b in um")->delimiter(',');

  CLI::App* cmp = app.add_subcommand("compare", "L-inf/L2 distance of two curves");
  cmp->add_option("csv_a", csv_a, "first CSV")->required();
  cmp->add_option("csv_b", csv_b, "second CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  have_window = wopt->count() > 0;

  try {
    if (run->parsed()) return cmd_run(config, out_csv, out_svg);
    if (pre->parsed()) return cmd_preset(preset);
    if (ana->parsed())
      return cmd_analyze(csv, metric,
                         have_window ? std::optional{window_pair} : std::nullopt);
    if (cmp->parsed()) return cmd_compare(csv_a, csv_b);
  } catch (const cpi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cpi::NumericGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  } catch (const cpi::MetricError& e) {
    std::cerr << "metric error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
