#include "cpi/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cpi {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require_keys(const json& j, const std::string& where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const char* k : required)
    if (!j.contains(k))
      throw ConfigError("missing field `" + (where.empty() ? std::string(k)
                                                           : where + "." + k) + "`");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known |= it.key() == k;
    for (const char* k : optional) known |= it.key() == k;
    if (!known)
      throw ConfigError("unknown key `" + (where.empty() ? it.key()
                                                         : where + "." + it.key()) + "`");
  }
}

double num(const json& j, const std::string& key_path) {
  if (!j.is_number()) throw ConfigError("field `" + key_path + "` must be a number");
  return j.get<double>();
}

PulseSpec parse_pulse(const json& j, const std::string& where) {
  require_keys(j, where,
               {"center_wavelength_nm", "fwhm_bandwidth_nm", "gdd_fs2", "amplitude"});
  PulseSpec p;
  p.center_wavelength_nm = num(j["center_wavelength_nm"], where + ".center_wavelength_nm");
  p.fwhm_bandwidth_nm = num(j["fwhm_bandwidth_nm"], where + ".fwhm_bandwidth_nm");
  p.gdd_fs2 = num(j["gdd_fs2"], where + ".gdd_fs2");
  p.amplitude = num(j["amplitude"], where + ".amplitude");
  return p;
}

MaskSpec parse_mask(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type"))
    throw ConfigError("missing field `" + where + ".type`");
  const std::string type = j["type"].get<std::string>();
  if (type == "block") {
    require_keys(j, where, {"type", "center_nm", "width_nm"});
    return MaskSpec::block(num(j["center_nm"], where + ".center_nm"),
                           num(j["width_nm"], where + ".width_nm"));
  }
  if (type == "edge") {
    require_keys(j, where, {"type", "cutoff_nm", "keep"});
    const std::string keep = j["keep"].get<std::string>();
    if (keep != "red-side" && keep != "blue-side")
      throw ConfigError("field `" + where + ".keep` must be red-side or blue-side");
    return MaskSpec::edge(num(j["cutoff_nm"], where + ".cutoff_nm"),
                          keep == "red-side" ? MaskSpec::Keep::red_side
                                             : MaskSpec::Keep::blue_side);
  }
  throw ConfigError("field `" + where + ".type` must be block or edge");
}

std::vector<MaskSpec> parse_masks(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError("field `" + where + "` must be an array");
  std::vector<MaskSpec> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_mask(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json mask_json(const MaskSpec& m) {
  if (m.kind == MaskSpec::Kind::block)
    return json{{"type", "block"}, {"center_nm", m.center_nm}, {"width_nm", m.width_nm}};
  return json{{"type", "edge"},
              {"cutoff_nm", m.cutoff_nm},
              {"keep", m.keep == MaskSpec::Keep::red_side ? "red-side" : "blue-side"}};
}

}  // namespace

void write_interferogram_csv(const std::string& path, const Interferogram& ig) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file `" + path + "`");
  f << "# cpi-lab v1, preset=" << preset_name(ig.meta.preset) << "\n";
  const bool env = ig.has_envelope();
  f << (env ? "delay_um,signal,envelope_low,envelope_high" : "delay_um,signal") << "\n";
  for (size_t i = 0; i < ig.delays_um.size(); ++i) {
    f << fmt17(ig.delays_um[i]) << "," << fmt17(ig.signal[i]);
    if (env) f << "," << fmt17(ig.envelope_low[i]) << "," << fmt17(ig.envelope_high[i]);
    f << "\n";
  }
  if (!f) throw ConfigError("failed writing `" + path + "`");
}

CsvCurve read_curve_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open CSV `" + path + "`");

  std::string line;
  if (!std::getline(f, line)) throw ConfigError("empty CSV `" + path + "`");
  const std::string magic = "# cpi-lab v1, preset=";
  if (line.rfind(magic, 0) != 0)
    throw ConfigError("CSV `" + path + "` lacks the `# cpi-lab v1` header");
  CsvCurve out;
  out.preset = line.substr(magic.size());

  if (!std::getline(f, line)) throw ConfigError("CSV `" + path + "` lacks a column header");
  bool env;
  if (line == "delay_um,signal")
    env = false;
  else if (line == "delay_um,signal,envelope_low,envelope_high")
    env = true;
  else
    throw ConfigError("CSV `" + path + "` has an unknown column header");

  size_t lineno = 2;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      size_t pos = 0;
      double v;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw ConfigError("CSV `" + path + "` line " + std::to_string(lineno) +
                          ": not a number");
      }
      if (pos != cell.size())
        throw ConfigError("CSV `" + path + "` line " + std::to_string(lineno) +
                          ": trailing characters");
      row.push_back(v);
    }
    if (row.size() != (env ? 4u : 2u))
      throw ConfigError("CSV `" + path + "` line " + std::to_string(lineno) +
                        ": wrong column count");
    out.curve.x.push_back(row[0]);
    out.curve.y.push_back(row[1]);
    if (env) {
      out.curve.envelope_low.push_back(row[2]);
      out.curve.envelope_high.push_back(row[3]);
    }
  }
  if (out.curve.x.size() < 2) throw ConfigError("CSV `" + path + "` has fewer than 2 rows");
  for (size_t i = 1; i < out.curve.x.size(); ++i)
    if (out.curve.x[i] <= out.curve.x[i - 1])
      throw ConfigError("CSV `" + path + "` delays are not strictly increasing");
  return out;
}

ExperimentSpec parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  require_keys(j, "",
               {"preset", "grid", "chirped", "antichirped", "masks_chirped",
                "masks_antichirped", "detector", "scan", "term_selection"},
               {"arm_gdd_fs2", "expected_fringe_period_um"});

  ExperimentSpec spec;
  spec.preset = preset_from_name(j["preset"].get<std::string>());

  const json& g = j["grid"];
  require_keys(g, "grid", {"n", "span_rad_per_fs", "center_wavelength_nm"});
  if (!g["n"].is_number_integer()) throw ConfigError("field `grid.n` must be an integer");
  spec.grid.n = g["n"].get<int>();
  spec.grid.span_rad_per_fs = num(g["span_rad_per_fs"], "grid.span_rad_per_fs");
  spec.grid.center_wavelength_nm = num(g["center_wavelength_nm"], "grid.center_wavelength_nm");

  spec.chirped = parse_pulse(j["chirped"], "chirped");
  spec.antichirped = parse_pulse(j["antichirped"], "antichirped");
  spec.masks_chirped = parse_masks(j["masks_chirped"], "masks_chirped");
  spec.masks_antichirped = parse_masks(j["masks_antichirped"], "masks_antichirped");

  const json& d = j["detector"];
  require_keys(d, "detector", {"mode", "center_wavelength_nm", "fwhm_nm", "shape"});
  const std::string mode = d["mode"].get<std::string>();
  if (mode == "sfg-narrowband")
    spec.detector.mode = DetectorMode::sfg_narrowband;
  else if (mode == "fundamental-power")
    spec.detector.mode = DetectorMode::fundamental_power;
  else
    throw ConfigError("field `detector.mode` must be sfg-narrowband or fundamental-power");
  spec.detector.center_wavelength_nm =
      num(d["center_wavelength_nm"], "detector.center_wavelength_nm");
  spec.detector.fwhm_nm = num(d["fwhm_nm"], "detector.fwhm_nm");
  const std::string shape = d["shape"].get<std::string>();
  if (shape == "gaussian")
    spec.detector.shape = FilterShape::gaussian;
  else if (shape == "rect")
    spec.detector.shape = FilterShape::rect;
  else
    throw ConfigError("field `detector.shape` must be gaussian or rect");

  const json& sc = j["scan"];
  require_keys(sc, "scan", {"start_um", "stop_um", "step_um", "mode"});
  spec.scan.start_um = num(sc["start_um"], "scan.start_um");
  spec.scan.stop_um = num(sc["stop_um"], "scan.stop_um");
  spec.scan.step_um = num(sc["step_um"], "scan.step_um");
  const std::string smode = sc["mode"].get<std::string>();
  if (smode == "fringe")
    spec.scan.mode = ScanMode::fringe;
  else if (smode == "envelope")
    spec.scan.mode = ScanMode::envelope;
  else
    throw ConfigError("field `scan.mode` must be fringe or envelope");

  const std::string terms = j["term_selection"].get<std::string>();
  if (terms == "all")
    spec.term_selection = TermSelection::all;
  else if (terms == "cross-only")
    spec.term_selection = TermSelection::cross_only;
  else if (terms == "self-only")
    spec.term_selection = TermSelection::self_only;
  else
    throw ConfigError("field `term_selection` must be all, cross-only or self-only");

  if (j.contains("arm_gdd_fs2")) spec.arm_gdd_fs2 = num(j["arm_gdd_fs2"], "arm_gdd_fs2");
  if (j.contains("expected_fringe_period_um"))
    spec.expected_fringe_period_um =
        num(j["expected_fringe_period_um"], "expected_fringe_period_um");

  validate_spec(spec);
  return spec;
}

ExperimentSpec parse_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config `" + path + "`");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string emit_config(const ExperimentSpec& spec) {
  auto pulse_json = [](const PulseSpec& p) {
    return json{{"center_wavelength_nm", p.center_wavelength_nm},
                {"fwhm_bandwidth_nm", p.fwhm_bandwidth_nm},
                {"gdd_fs2", p.gdd_fs2},
                {"amplitude", p.amplitude}};
  };
  json masks_c = json::array(), masks_a = json::array();
  for (const MaskSpec& m : spec.masks_chirped) masks_c.push_back(mask_json(m));
  for (const MaskSpec& m : spec.masks_antichirped) masks_a.push_back(mask_json(m));

  json j{
      {"preset", preset_name(spec.preset)},
      {"grid",
       {{"n", spec.grid.n},
        {"span_rad_per_fs", spec.grid.span_rad_per_fs},
        {"center_wavelength_nm", spec.grid.center_wavelength_nm}}},
      {"chirped", pulse_json(spec.chirped)},
      {"antichirped", pulse_json(spec.antichirped)},
      {"masks_chirped", masks_c},
      {"masks_antichirped", masks_a},
      {"detector",
       {{"mode", spec.detector.mode == DetectorMode::sfg_narrowband ? "sfg-narrowband"
                                                                    : "fundamental-power"},
        {"center_wavelength_nm", spec.detector.center_wavelength_nm},
        {"fwhm_nm", spec.detector.fwhm_nm},
        {"shape", spec.detector.shape == FilterShape::gaussian ? "gaussian" : "rect"}}},
      {"scan",
       {{"start_um", spec.scan.start_um},
        {"stop_um", spec.scan.stop_um},
        {"step_um", spec.scan.step_um},
        {"mode", spec.scan.mode == ScanMode::fringe ? "fringe" : "envelope"}}},
      {"term_selection", spec.term_selection == TermSelection::all ? "all"
                         : spec.term_selection == TermSelection::cross_only
                             ? "cross-only"
                             : "self-only"},
      {"arm_gdd_fs2", spec.arm_gdd_fs2},
      {"expected_fringe_period_um", spec.expected_fringe_period_um},
  };
  return j.dump(2) + "\n";
}

std::string metric_json(const Metric& m) {
  json j{{"name", m.name},
         {"value", m.value},
         {"uncertainty", m.uncertainty},
         {"window", {m.window_lo, m.window_hi}}};
  return j.dump() + "\n";
}

std::string distance_json(const CurveDistance& d, bool pass) {
  json j{{"l_inf", d.l_inf}, {"l2", d.l2}, {"pass", pass}};
  return j.dump() + "\n";
}

void write_svg(const std::string& path, const Interferogram& ig) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file `" + path + "`");

  const int W = 860, H = 520, ml = 80, mr = 20, mt = 20, mb = 60;
  const double x0 = ig.delays_um.front(), x1 = ig.delays_um.back();
  double y0 = ig.signal.front(), y1 = y0;
  auto widen = [&](const std::vector<double>& v) {
    for (double s : v) {
      y0 = std::min(y0, s);
      y1 = std::max(y1, s);
    }
  };
  widen(ig.signal);
  if (ig.has_envelope()) {
    widen(ig.envelope_low);
    widen(ig.envelope_high);
  }
  if (y1 == y0) y1 = y0 + 1.0;

  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };
  auto polyline = [&](const std::vector<double>& ys, const char* color) {
    f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    for (size_t i = 0; i < ig.delays_um.size(); ++i)
      f << px(ig.delays_um[i]) << "," << py(ys[i]) << " ";
    f << "\"/>\n";
  };

  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
    << "\" height=\"" << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0;
    const double yv = y0 + (y1 - y0) * i / 5.0;
    f << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\"" << px(xv)
      << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
    f << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 20
      << "\" font-size=\"11\" text-anchor=\"middle\">" << xv << "</text>\n";
    f << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
      << py(yv) << "\" stroke=\"black\"/>\n";
    char lab[32];
    std::snprintf(lab, sizeof(lab), "%.3g", yv);
    f << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
      << "\" font-size=\"11\" text-anchor=\"end\">" << lab << "</text>\n";
  }

  polyline(ig.signal, "#1f6fb2");
  if (ig.has_envelope()) {
    polyline(ig.envelope_low, "#b23b1f");
    polyline(ig.envelope_high, "#b23b1f");
  }

  f << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 15
    << "\" font-size=\"13\" text-anchor=\"middle\">delay (um)</text>\n";
  f << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
    << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << (mt + H - mb) / 2 << ")\">signal (arb. units)</text>\n";
  f << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 16 << "\" font-size=\"12\">preset "
    << preset_name(ig.meta.preset) << "</text>\n";
  f << "</svg>\n";
}

}  // namespace cpi
