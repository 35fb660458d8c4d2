// liquilens: command line front end for the droplet lens toolkit.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "liquilens/calibration.hpp"
#include "liquilens/cap_geometry.hpp"
#include "liquilens/errors.hpp"
#include "liquilens/lens_model.hpp"
#include "liquilens/ray_trace.hpp"
#include "liquilens/sample_data.hpp"
#include "liquilens/svg_plot.hpp"
#include "liquilens/units.hpp"

using json = nlohmann::json;
using namespace liquilens;

namespace {

// ---- formatting -----------------------------------------------------------
// tables: mm to 4 decimals, degrees to 2, micrometers to 3; machine formats
// carry full precision

std::string g10(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.10g", v);
  return b;
}

std::string fixed(double v, int prec) {
  char b[64];
  std::snprintf(b, sizeof b, "%.*f", prec, v);
  return b;
}

std::string mm(double v) { return fixed(v, 4) + " mm"; }
std::string deg(double v) { return fixed(v, 2) + " deg"; }
std::string um(double v) { return fixed(v, 3) + " um"; }
std::string mm3(double v) { return fixed(v, 4) + " mm^3"; }

void row(const std::string& label, const std::string& value) {
  std::printf("%-18s %s\n", label.c_str(), value.c_str());
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string opt_csv(const std::optional<double>& v) { return v ? g10(*v) : std::string(); }

std::string opt_table(const std::optional<double>& v, int prec) {
  return v ? fixed(*v, prec) : std::string("-");
}

// ---- shared option bundles --------------------------------------------------

struct GlobalOpts {
  double diameter = 2.0;
  double index = 1.33;
  double f_number = 2.8;
  std::string format = "table";
  std::string plot_path;

  LensConfig lens() const { return LensConfig{diameter, index, {}}; }
};

struct PumpOpts {
  bool enabled = false;
  double scale = kDefaultVolumeScale;
  double dead_volume = 0.0;

  double effective(double reading) const {
    return enabled ? scale * (reading - dead_volume) : reading;
  }
};

void add_pump_options(CLI::App* cmd, PumpOpts& pump) {
  auto* flag = cmd->add_flag("--pump-units", pump.enabled,
                             "treat --volume as a pump reading mapped through scale/dead volume");
  cmd->add_option("--scale", pump.scale, "mm^3 of cap volume per pump unit")
      ->needs(flag)
      ->capture_default_str();
  cmd->add_option("--dead-volume", pump.dead_volume, "pump units spent before the cap grows")
      ->needs(flag)
      ->capture_default_str();
}

struct DataOpts {
  std::string path;
  bool use_sample = false;

  MeasurementSeries load() const {
    if (use_sample) return sample_measurements();
    return load_measurements_file(path);
  }
};

void add_data_options(CLI::App* cmd, DataOpts& data) {
  auto* file = cmd->add_option("--data", data.path, "measurement CSV (volume,contact_angle_deg)");
  cmd->add_flag("--sample", data.use_sample, "use the bundled sample series")->excludes(file);
}

// configuration/usage problems exit with code 1
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void plot_unsupported(const GlobalOpts& g) {
  if (!g.plot_path.empty())
    std::cerr << "note: this command produces no series to plot; --plot ignored\n";
}

// ---- config file ------------------------------------------------------------

void apply_config_file(GlobalOpts& g) {
  const char* path = std::getenv("LIQUILENS_CONFIG");
  if (path == nullptr || *path == '\0') return;
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("cannot open config file '") + path + "'");
  std::string line;
  int lineno = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError(std::string(path) + ":" + std::to_string(lineno) +
                       ": expected key=value, got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto num = [&] {
      try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw UsageError(std::string(path) + ":" + std::to_string(lineno) + ": bad number '" +
                         value + "' for key '" + key + "'");
      }
    };
    if (key == "diameter")
      g.diameter = num();
    else if (key == "index")
      g.index = num();
    else if (key == "f_number")
      g.f_number = num();
    else if (key == "format") {
      if (value != "table" && value != "csv" && value != "json")
        throw UsageError(std::string(path) + ":" + std::to_string(lineno) + ": bad format '" +
                         value + "'");
      g.format = value;
    } else {
      throw UsageError(std::string(path) + ":" + std::to_string(lineno) + ": unknown key '" +
                       key + "'");
    }
  }
}

// ---- forward / inverse ------------------------------------------------------

struct ForwardOpts {
  double volume = 0.0;
  PumpOpts pump;
};

int run_forward(const GlobalOpts& g, const ForwardOpts& o) {
  const LensConfig cfg = g.lens();
  validate(cfg);
  const double effective = o.pump.effective(o.volume);
  const CapState cap = resolve_cap(cfg.diameter, CapVolume{effective});
  const double focal = plano_convex_focal(cfg.index, cap.radius);
  plot_unsupported(g);

  if (g.format == "json") {
    json j{{"diameter_mm", cfg.diameter},
           {"index", cfg.index},
           {"volume_mm3", cap.volume},
           {"sag_mm", cap.sag},
           {"radius_mm", cap.radius},
           {"contact_angle_deg", to_degrees(cap.contact_angle)},
           {"focal_mm", focal}};
    if (o.pump.enabled) {
      j["pumped_volume"] = o.volume;
      j["scale_mm3_per_unit"] = o.pump.scale;
      j["dead_volume"] = o.pump.dead_volume;
    }
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "diameter_mm,index,volume_mm3,sag_mm,radius_mm,contact_angle_deg,focal_mm\n"
              << g10(cfg.diameter) << "," << g10(cfg.index) << "," << g10(cap.volume) << ","
              << g10(cap.sag) << "," << g10(cap.radius) << ","
              << g10(to_degrees(cap.contact_angle)) << "," << g10(focal) << "\n";
  } else {
    if (o.pump.enabled) {
      row("pumped volume", g10(o.volume) + " units");
      row("scale", g10(o.pump.scale) + " mm^3/unit");
      row("dead volume", g10(o.pump.dead_volume) + " units");
    }
    row("diameter", mm(cfg.diameter));
    row("index", fixed(cfg.index, 4));
    row("volume", mm3(cap.volume));
    row("sag", mm(cap.sag));
    row("radius", mm(cap.radius));
    row("contact angle", deg(to_degrees(cap.contact_angle)));
    row("focal length", mm(focal));
  }
  return 0;
}

struct InverseOpts {
  double focal = 0.0;
};

int run_inverse(const GlobalOpts& g, const InverseOpts& o) {
  const LensConfig cfg = g.lens();
  const double volume = focal_to_volume(cfg, o.focal);
  const CapState cap = resolve_cap(cfg.diameter, CapVolume{volume});
  plot_unsupported(g);

  if (g.format == "json") {
    const json j{{"diameter_mm", cfg.diameter},
                 {"index", cfg.index},
                 {"focal_mm", o.focal},
                 {"volume_mm3", cap.volume},
                 {"sag_mm", cap.sag},
                 {"radius_mm", cap.radius},
                 {"contact_angle_deg", to_degrees(cap.contact_angle)}};
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "diameter_mm,index,focal_mm,volume_mm3,sag_mm,radius_mm,contact_angle_deg\n"
              << g10(cfg.diameter) << "," << g10(cfg.index) << "," << g10(o.focal) << ","
              << g10(cap.volume) << "," << g10(cap.sag) << "," << g10(cap.radius) << ","
              << g10(to_degrees(cap.contact_angle)) << "\n";
  } else {
    row("diameter", mm(cfg.diameter));
    row("index", fixed(cfg.index, 4));
    row("focal length", mm(o.focal));
    row("volume", mm3(cap.volume));
    row("sag", mm(cap.sag));
    row("radius", mm(cap.radius));
    row("contact angle", deg(to_degrees(cap.contact_angle)));
  }
  return 0;
}

// ---- curve ------------------------------------------------------------------

struct CurveOpts {
  double f_min = 0.0;
  double f_max = 0.0;
  int steps = 50;
};

int run_curve(const GlobalOpts& g, const CurveOpts& o) {
  const LensConfig cfg = g.lens();
  const auto curve = theoretical_curve(cfg, o.f_min, o.f_max, o.steps);

  if (g.format == "json") {
    json rows = json::array();
    for (const CurvePoint& p : curve)
      rows.push_back({{"focal_mm", p.focal_length},
                      {"volume_mm3", p.volume},
                      {"contact_angle_deg", p.contact_angle_deg},
                      {"radius_mm", p.radius},
                      {"sag_mm", p.sag}});
    std::cout << json{{"diameter_mm", cfg.diameter}, {"index", cfg.index}, {"points", rows}}
                     .dump(2)
              << "\n";
  } else if (g.format == "csv") {
    std::cout << "focal_mm,volume_mm3,contact_angle_deg,radius_mm,sag_mm\n";
    for (const CurvePoint& p : curve)
      std::cout << g10(p.focal_length) << "," << g10(p.volume) << ","
                << g10(p.contact_angle_deg) << "," << g10(p.radius) << "," << g10(p.sag) << "\n";
  } else {
    std::printf("%-12s %-12s %-12s %-12s %-12s\n", "focal_mm", "volume_mm3", "angle_deg",
                "radius_mm", "sag_mm");
    for (const CurvePoint& p : curve)
      std::printf("%-12s %-12s %-12s %-12s %-12s\n", fixed(p.focal_length, 4).c_str(),
                  fixed(p.volume, 4).c_str(), fixed(p.contact_angle_deg, 2).c_str(),
                  fixed(p.radius, 4).c_str(), fixed(p.sag, 4).c_str());
  }

  if (!g.plot_path.empty()) {
    Chart focal_chart{"focal length vs cap volume", "volume (mm^3)", "focal length (mm)", {}};
    Chart angle_chart{"contact angle vs cap volume", "volume (mm^3)", "contact angle (deg)", {}};
    PlotSeries fs{"focal length", {}, "", true, false};
    PlotSeries as{"contact angle", {}, "", true, false};
    for (const CurvePoint& p : curve) {
      fs.points.emplace_back(p.volume, p.focal_length);
      as.points.emplace_back(p.volume, p.contact_angle_deg);
    }
    focal_chart.series.push_back(std::move(fs));
    angle_chart.series.push_back(std::move(as));
    write_svg_file(g.plot_path, {focal_chart, angle_chart});
  }
  return 0;
}

// ---- trace ------------------------------------------------------------------

struct TraceOpts {
  double volume = 0.0;
  int rays = 101;
  bool clamp = false;
  PumpOpts pump;
};

int run_trace(const GlobalOpts& g, const TraceOpts& o) {
  const LensConfig cfg = g.lens();
  validate(cfg);
  const double effective = o.pump.effective(o.volume);
  const SimulationResult r =
      simulate_volume(cfg, effective, g.f_number, SimulateOptions{o.rays, o.clamp});
  const SpotMetrics& m = r.metrics;

  if (g.format == "json") {
    json j{{"volume_mm3", effective},
           {"f_number", g.f_number},
           {"efl_mm", r.efl},
           {"paraxial_focus_z_mm", m.paraxial_focus_z},
           {"marginal_focus_z_mm", m.marginal_focus_z},
           {"best_focus_z_mm", m.best_focus_z},
           {"colc_diameter_um", m.colc_diameter * 1e3},
           {"rms_radius_um", m.rms_radius_at_best * 1e3},
           {"pupil_radius_mm", r.pupil_radius},
           {"aperture_radius_mm", r.prescription.aperture_radius},
           {"center_thickness_mm", r.prescription.center_thickness},
           {"rays_dropped", r.rays_dropped},
           {"warnings", r.warnings}};
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "volume_mm3,f_number,efl_mm,paraxial_focus_z_mm,marginal_focus_z_mm,"
                 "best_focus_z_mm,colc_diameter_um,rms_radius_um,pupil_radius_mm,"
                 "aperture_radius_mm,rays_dropped\n"
              << g10(effective) << "," << g10(g.f_number) << "," << g10(r.efl) << ","
              << g10(m.paraxial_focus_z) << "," << g10(m.marginal_focus_z) << ","
              << g10(m.best_focus_z) << "," << g10(m.colc_diameter * 1e3) << ","
              << g10(m.rms_radius_at_best * 1e3) << "," << g10(r.pupil_radius) << ","
              << g10(r.prescription.aperture_radius) << "," << r.rays_dropped << "\n";
    for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
  } else {
    row("volume", mm3(effective));
    row("f-number", fixed(g.f_number, 2));
    row("efl", mm(r.efl));
    row("paraxial focus z", mm(m.paraxial_focus_z));
    row("marginal focus z", mm(m.marginal_focus_z));
    row("best focus z", mm(m.best_focus_z));
    row("colc diameter", um(m.colc_diameter * 1e3));
    row("rms spot radius", um(m.rms_radius_at_best * 1e3));
    row("pupil radius", mm(r.pupil_radius));
    row("aperture radius", mm(r.prescription.aperture_radius));
    row("rays dropped", std::to_string(r.rays_dropped));
    for (const std::string& w : r.warnings) std::cout << "warning: " << w << "\n";
  }

  if (!g.plot_path.empty()) {
    const Prescription& p = r.prescription;
    const int fan = 25;
    std::vector<MeridionalRay> exits;
    for (int i = 1; i <= fan; ++i) exits.push_back(trace(p, p.aperture_radius * i / fan));

    Chart lsa{"axial crossing vs entry height", "axial crossing z (mm)", "entry height (mm)", {}};
    PlotSeries crossings{"fan rays", {}, "", true, true};
    for (int i = 0; i < fan; ++i)
      crossings.points.emplace_back(axial_crossing(exits[i]),
                                    p.aperture_radius * (i + 1) / fan);
    const PlotSeries best_line{
        "best focus", {{m.best_focus_z, 0.0}, {m.best_focus_z, p.aperture_radius}}, "", true,
        false};
    const PlotSeries parax_line{
        "paraxial focus", {{m.paraxial_focus_z, 0.0}, {m.paraxial_focus_z, p.aperture_radius}},
        "", true, false};
    lsa.series = {crossings, best_line, parax_line};

    Chart spot{"fan spread along the axis", "z (mm)", "spot diameter (um)", {}};
    PlotSeries width{"fan spread", {}, "", true, false};
    const double z0 = m.marginal_focus_z - 0.05 * (m.paraxial_focus_z - m.marginal_focus_z);
    const double z1 = m.paraxial_focus_z + 0.05 * (m.paraxial_focus_z - m.marginal_focus_z);
    for (int i = 0; i <= 200; ++i) {
      const double z = z0 + (z1 - z0) * i / 200;
      double spread = 0.0;
      for (const MeridionalRay& ray : exits) {
        const double y = ray.height + ray.direction.y / ray.direction.z * (z - ray.origin_z);
        spread = std::max(spread, std::abs(y));
      }
      width.points.emplace_back(z, 2.0 * spread * 1e3);
    }
    const PlotSeries colc_marker{
        "circle of least confusion", {{m.best_focus_z, m.colc_diameter * 1e3}}, "", false, true};
    spot.series = {width, colc_marker};
    write_svg_file(g.plot_path, {lsa, spot});
  }
  return 0;
}

// ---- fit --------------------------------------------------------------------

struct FitOpts {
  DataOpts data;
  std::string export_sample_path;
};

int run_fit(const GlobalOpts& g, const FitOpts& o) {
  if (!o.export_sample_path.empty()) {
    std::ofstream out(o.export_sample_path, std::ios::binary);
    if (!out) throw UsageError("cannot open '" + o.export_sample_path + "' for writing");
    out << sample_measurements_csv();
    if (!o.data.use_sample && o.data.path.empty()) return 0;  // export only
  } else if (!o.data.use_sample && o.data.path.empty()) {
    throw UsageError("fit needs --data FILE or --sample (or --export-sample PATH)");
  }

  const MeasurementSeries series = o.data.load();
  const LinearFit lin = linear_fit(series);
  const VolumeCalibration cal = fit_volume_model(series, g.diameter);
  const std::string unit = series.volume_unit_label;

  if (g.format == "json") {
    const json j{{"source", series.source.empty() ? "stream" : series.source},
                 {"points", series.points.size()},
                 {"linear",
                  {{"slope_deg_per_unit", lin.slope},
                   {"intercept_deg", lin.intercept},
                   {"r_squared", lin.r_squared},
                   {"residuals_deg", lin.residuals}}},
                 {"volume_model",
                  {{"scale_mm3_per_unit", cal.scale},
                   {"dead_volume", cal.dead_volume},
                   {"rms_residual_deg", cal.rms_residual}}}};
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "slope_deg_per_unit,intercept_deg,r_squared,scale_mm3_per_unit,dead_volume,"
                 "rms_residual_deg\n"
              << g10(lin.slope) << "," << g10(lin.intercept) << "," << g10(lin.r_squared) << ","
              << g10(cal.scale) << "," << g10(cal.dead_volume) << "," << g10(cal.rms_residual)
              << "\n";
  } else {
    row("points", std::to_string(series.points.size()));
    std::printf("linear fit: theta = slope * volume + intercept\n");
    row("  slope", g10(lin.slope) + " deg/" + unit);
    row("  intercept", deg(lin.intercept));
    row("  r_squared", fixed(lin.r_squared, 4));
    std::printf("volume model: cap volume = scale * (reading - dead volume)\n");
    row("  scale", g10(cal.scale) + " mm^3/" + unit);
    row("  dead volume", g10(cal.dead_volume) + " " + unit);
    row("  rms residual", deg(cal.rms_residual));
  }

  if (!g.plot_path.empty()) {
    Chart chart{"contact angle vs pump reading", "pump reading (" + unit + ")",
                "contact angle (deg)", {}};
    PlotSeries measured{"measured", {}, "", false, true};
    PlotSeries line{"linear fit", {}, "", true, false};
    PlotSeries model{"volume model", {}, "", true, false};
    const double v0 = series.points.front().pumped_volume;
    const double v1 = series.points.back().pumped_volume;
    for (const auto& p : series.points)
      measured.points.emplace_back(p.pumped_volume, p.contact_angle_deg);
    for (int i = 0; i <= 100; ++i) {
      const double v = v0 + (v1 - v0) * i / 100;
      line.points.emplace_back(v, lin.slope * v + lin.intercept);
      try {
        model.points.emplace_back(v, predict_theta(cal, g.diameter, v));
      } catch (const std::domain_error&) {
      }
    }
    chart.series = {measured, line, model};
    write_svg_file(g.plot_path, {chart});
  }
  return 0;
}

// ---- compare ----------------------------------------------------------------

struct CompareOpts {
  DataOpts data;
  bool no_fit = false;
  std::optional<double> ref_short;
  std::optional<double> ref_long;
};

int run_compare(const GlobalOpts& g, const CompareOpts& o) {
  if (!o.data.use_sample && o.data.path.empty())
    throw UsageError("compare needs --data FILE or --sample");
  const MeasurementSeries series = o.data.load();
  const LensConfig cfg = g.lens();

  std::optional<VolumeCalibration> cal;
  if (!o.no_fit) cal = fit_volume_model(series, cfg.diameter);

  std::optional<FocalRange> ref;
  if (o.ref_short && o.ref_long)
    ref = FocalRange{*o.ref_short, *o.ref_long};
  else if (o.data.use_sample)
    ref = sample_reported_focal_range();

  const ComparisonTable table = compare_table(series, cfg, cal, ref);

  if (g.format == "json") {
    json rows = json::array();
    for (const ComparisonRow& r : table.rows)
      rows.push_back({{"volume", r.pumped_volume},
                      {"theta_meas_deg", r.theta_meas_deg},
                      {"theta_theory_deg", opt_json(r.theta_theory_deg)},
                      {"theta_fitted_deg", opt_json(r.theta_fitted_deg)},
                      {"f_meas_mm", r.f_meas_mm},
                      {"f_theory_mm", opt_json(r.f_theory_mm)},
                      {"note", r.note}});
    json j{{"rows", rows}, {"notes", table.notes}};
    if (table.endpoint) {
      const EndpointDiscrepancy& d = *table.endpoint;
      j["endpoint"] = {{"reference_short_mm", d.reference.f_short},
                       {"reference_long_mm", d.reference.f_long},
                       {"computed_short_mm", d.f_short_computed},
                       {"computed_long_mm", d.f_long_computed},
                       {"short_end_relative_error", d.short_end_relative_error},
                       {"long_end_relative_error", d.long_end_relative_error},
                       {"implied_index", d.implied_index},
                       {"long_end_error_at_implied", d.long_end_error_at_implied}};
    } else {
      j["endpoint"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    if (o.no_fit)
      std::cout << "volume,theta_meas_deg,theta_theory_deg,f_meas_mm,f_theory_mm\n";
    else
      std::cout << "volume,theta_meas_deg,theta_theory_deg,theta_fitted_deg,f_meas_mm,"
                   "f_theory_mm\n";
    for (const ComparisonRow& r : table.rows) {
      std::cout << g10(r.pumped_volume) << "," << g10(r.theta_meas_deg) << ","
                << opt_csv(r.theta_theory_deg) << ",";
      if (!o.no_fit) std::cout << opt_csv(r.theta_fitted_deg) << ",";
      std::cout << g10(r.f_meas_mm) << "," << opt_csv(r.f_theory_mm) << "\n";
    }
    for (const std::string& n : table.notes) std::cerr << "note: " << n << "\n";
  } else {
    std::printf("%-10s %-12s %-14s %-14s %-10s %-10s\n", "volume", "theta_meas", "theta_theory",
                o.no_fit ? "" : "theta_fitted", "f_meas", "f_theory");
    for (const ComparisonRow& r : table.rows) {
      std::printf("%-10s %-12s %-14s %-14s %-10s %-10s", g10(r.pumped_volume).c_str(),
                  fixed(r.theta_meas_deg, 2).c_str(), opt_table(r.theta_theory_deg, 2).c_str(),
                  o.no_fit ? "" : opt_table(r.theta_fitted_deg, 2).c_str(),
                  fixed(r.f_meas_mm, 4).c_str(), opt_table(r.f_theory_mm, 4).c_str());
      if (!r.note.empty()) std::printf("  [%s]", r.note.c_str());
      std::printf("\n");
    }
    for (const std::string& n : table.notes) std::printf("note: %s\n", n.c_str());
  }

  if (!g.plot_path.empty()) {
    const std::string unit = series.volume_unit_label;
    Chart angle_chart{"contact angle vs pump reading", "pump reading (" + unit + ")",
                      "contact angle (deg)", {}};
    Chart focal_chart{"implied focal length vs pump reading", "pump reading (" + unit + ")",
                      "focal length (mm)", {}};
    PlotSeries meas{"measured", {}, "", false, true};
    PlotSeries theory{"theory", {}, "", true, false};
    PlotSeries fitted{"fitted model", {}, "", true, false};
    PlotSeries f_meas{"measured", {}, "", false, true};
    PlotSeries f_theory{"theory", {}, "", true, false};
    const double v0 = series.points.front().pumped_volume;
    const double v1 = series.points.back().pumped_volume;
    const VolumeCalibration fixed_model{kDefaultVolumeScale, 0.0, 0.0};
    for (const ComparisonRow& r : table.rows) {
      meas.points.emplace_back(r.pumped_volume, r.theta_meas_deg);
      f_meas.points.emplace_back(r.pumped_volume, r.f_meas_mm);
    }
    for (int i = 0; i <= 100; ++i) {
      const double v = v0 + (v1 - v0) * i / 100;
      try {
        const double th = predict_theta(fixed_model, cfg.diameter, v);
        theory.points.emplace_back(v, th);
        f_theory.points.emplace_back(
            v, plano_convex_focal(cfg.index, radius_from_contact_angle(cfg.diameter,
                                                                       to_radians(th))));
      } catch (const std::domain_error&) {
      }
      if (cal) {
        try {
          fitted.points.emplace_back(v, predict_theta(*cal, cfg.diameter, v));
        } catch (const std::domain_error&) {
        }
      }
    }
    angle_chart.series = {meas, theory};
    if (cal) angle_chart.series.push_back(fitted);
    focal_chart.series = {f_meas, f_theory};
    write_svg_file(g.plot_path, {angle_chart, focal_chart});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  try {
    apply_config_file(g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"droplet lens toolkit: spherical-cap geometry, thin-lens focal model,\n"
               "exact meridional ray tracing and pump calibration"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--diameter", g.diameter, "aperture diameter, mm")->capture_default_str();
  app.add_option("--index", g.index, "refractive index of the liquid")->capture_default_str();
  app.add_option("--f-number", g.f_number, "working f-number for ray tracing")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--plot", g.plot_path, "write an SVG chart to this path (series commands)");

  ForwardOpts fwd;
  auto* forward = app.add_subcommand("forward", "cap geometry and focal length from volume");
  forward->add_option("--volume", fwd.volume, "cap volume, mm^3 (or pump units)")->required();
  add_pump_options(forward, fwd.pump);

  InverseOpts inv;
  auto* inverse = app.add_subcommand("inverse", "volume and cap geometry from focal length");
  inverse->add_option("--focal", inv.focal, "target focal length, mm")->required();

  CurveOpts cur;
  auto* curve = app.add_subcommand("curve", "sample the focal length vs volume relation");
  curve->add_option("--f-min", cur.f_min, "shortest focal length, mm")->required();
  curve->add_option("--f-max", cur.f_max, "longest focal length, mm")->required();
  curve->add_option("--steps", cur.steps, "number of grid points")->capture_default_str();

  TraceOpts trc;
  auto* trace = app.add_subcommand("trace", "ray-trace aberration metrics at a fill volume");
  trace->add_option("--volume", trc.volume, "cap volume, mm^3 (or pump units)")->required();
  trace->add_option("--rays", trc.rays, "fan size")->capture_default_str();
  trace->add_flag("--clamp-pupil", trc.clamp, "clamp an oversized entrance pupil to the rim");
  add_pump_options(trace, trc.pump);

  FitOpts fit;
  auto* fit_cmd = app.add_subcommand("fit", "calibrate pump readings against measured angles");
  add_data_options(fit_cmd, fit.data);
  fit_cmd->add_option("--export-sample", fit.export_sample_path,
                      "write the bundled sample CSV to this path");

  CompareOpts cmp;
  auto* compare = app.add_subcommand("compare", "tabulate measured vs predicted angles");
  add_data_options(compare, cmp.data);
  compare->add_flag("--no-fit", cmp.no_fit, "skip the volume-model fit column");
  compare->add_option("--ref-short", cmp.ref_short, "reference short focal endpoint, mm");
  compare->add_option("--ref-long", cmp.ref_long, "reference long focal endpoint, mm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 1;
  }

  try {
    if (*forward) return run_forward(g, fwd);
    if (*inverse) return run_inverse(g, inv);
    if (*curve) return run_curve(g, cur);
    if (*trace) return run_trace(g, trc);
    if (*fit_cmd) return run_fit(g, fit);
    if (*compare) return run_compare(g, cmp);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CsvParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
