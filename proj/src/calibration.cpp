#include "liquilens/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <sstream>

#include "liquilens/errors.hpp"
#include "liquilens/units.hpp"

namespace liquilens {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

constexpr const char* kHeader = "volume,contact_angle_deg";

double parse_field(const std::string& field, int line, const char* what) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw CsvParseError("line " + std::to_string(line) + ": cannot parse " + what + " from '" +
                            field + "'",
                        line);
  return value;
}

}  // namespace

void validate(const MeasurementSeries& series) {
  std::vector<std::string> problems;
  if (series.points.size() < 2)
    problems.push_back("series needs at least 2 points, got " +
                       std::to_string(series.points.size()));
  for (size_t i = 0; i < series.points.size(); ++i) {
    const MeasurementPoint& p = series.points[i];
    if (i > 0 && !(p.pumped_volume > series.points[i - 1].pumped_volume))
      problems.push_back("point " + std::to_string(i + 1) + ": pumped volume " +
                         fmt(p.pumped_volume) + " does not increase over " +
                         fmt(series.points[i - 1].pumped_volume));
    if (!(p.contact_angle_deg > 0.0) || !(p.contact_angle_deg < 90.0))
      problems.push_back("point " + std::to_string(i + 1) + ": contact angle " +
                         fmt(p.contact_angle_deg) + " outside (0, 90) deg");
  }
  if (!problems.empty()) {
    std::string joined;
    for (size_t i = 0; i < problems.size(); ++i) {
      if (i) joined += "; ";
      joined += problems[i];
    }
    throw CsvParseError(joined);
  }
}

MeasurementSeries load_measurements(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line))
    throw CsvParseError(std::string("empty input: expected header '") + kHeader + "'");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw CsvParseError("line 1: bad header '" + line + "', expected '" + kHeader + "'", 1);

  MeasurementSeries series;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw CsvParseError(
          "line " + std::to_string(lineno) + ": expected exactly 2 comma-separated fields",
          lineno);
    MeasurementPoint p;
    p.pumped_volume = parse_field(line.substr(0, comma), lineno, "volume");
    p.contact_angle_deg = parse_field(line.substr(comma + 1), lineno, "contact angle");
    series.points.push_back(p);
  }
  validate(series);
  return series;
}

MeasurementSeries load_measurements_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvParseError("cannot open measurement file '" + path + "'");
  MeasurementSeries series = load_measurements(in);
  series.source = path;
  return series;
}

LinearFit linear_fit(const MeasurementSeries& series) {
  validate(series);
  const size_t n = series.points.size();
  double mx = 0.0, my = 0.0;
  for (const MeasurementPoint& p : series.points) {
    mx += p.pumped_volume;
    my += p.contact_angle_deg;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const MeasurementPoint& p : series.points) {
    const double dx = p.pumped_volume - mx;
    const double dy = p.contact_angle_deg - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw std::domain_error("degenerate fit: pumped volumes do not vary");

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  fit.residuals.reserve(n);
  for (const MeasurementPoint& p : series.points) {
    const double r = p.contact_angle_deg - (fit.slope * p.pumped_volume + fit.intercept);
    fit.residuals.push_back(r);
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

namespace {

// Sum of squared angle residuals (deg^2); nullopt when any point leaves the
// cap domain.
std::optional<double> model_sse(const MeasurementSeries& series, double diameter, double scale,
                                double dead, double hemi) {
  double sse = 0.0;
  for (const MeasurementPoint& p : series.points) {
    const double effective = scale * (p.pumped_volume - dead);
    if (!(effective > 0.0) || effective > hemi) return std::nullopt;
    const double theta =
        to_degrees(contact_angle_from_sag(diameter, sag_from_volume(diameter, effective)));
    const double r = theta - p.contact_angle_deg;
    sse += r * r;
  }
  return sse;
}

// Golden-section minimum of f over [lo, hi]; f returns +inf when infeasible.
double golden_min(double lo, double hi, const std::function<double(double)>& f) {
  if (!(hi > lo)) return lo;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

VolumeCalibration fit_volume_model(const MeasurementSeries& series, double diameter) {
  validate(series);
  const double hemi = hemisphere_volume(diameter);
  const double vmax = series.points.back().pumped_volume;
  const double vmin = series.points.front().pumped_volume;
  const double inf = std::numeric_limits<double>::infinity();
  const auto sse_or_inf = [&](double scale, double dead) {
    const auto s = model_sse(series, diameter, scale, dead, hemi);
    return s ? *s : inf;
  };

  // Coarse grid. Scales are log-spaced; ascending iteration order makes ties
  // resolve to the lowest scale, then the lowest dead volume.
  constexpr int kScaleSteps = 97;
  constexpr int kDeadSteps = 64;
  const double log_lo = std::log(1e-5);
  const double log_hi = std::log(1.0);
  double best_sse = inf;
  double best_scale = 0.0, best_dead = 0.0;
  for (int i = 0; i < kScaleSteps; ++i) {
    const double scale = std::exp(log_lo + (log_hi - log_lo) * i / (kScaleSteps - 1));
    for (int j = 0; j < kDeadSteps; ++j) {
      const double dead = vmax * j / kDeadSteps;
      const double sse = sse_or_inf(scale, dead);
      if (sse < best_sse) {
        best_sse = sse;
        best_scale = scale;
        best_dead = dead;
      }
    }
  }
  if (!(best_sse < inf))
    throw NoFeasibleModelError(
        "no (scale, dead_volume) pair keeps every point inside the cap domain for diameter " +
        fmt(diameter) + " mm");

  // Coordinate descent: shrink a window around the incumbent, line-searching
  // each parameter in turn until both move by < 1e-6 relative.
  double scale = best_scale;
  double dead = best_dead;
  double scale_ratio = std::exp((log_hi - log_lo) / (kScaleSteps - 1));  // one grid cell
  double dead_window = vmax / kDeadSteps;
  const double dead_cap = vmin * (1.0 - 1e-12);  // beyond this every point is infeasible
  for (int round = 0; round < 400; ++round) {
    const double new_scale =
        golden_min(scale / scale_ratio, scale * scale_ratio,
                   [&](double s) { return sse_or_inf(s, dead); });
    const double new_dead =
        golden_min(std::max(0.0, dead - dead_window), std::min(dead + dead_window, dead_cap),
                   [&](double d) { return sse_or_inf(new_scale, d); });
    const double ds = std::abs(new_scale - scale) / std::max(scale, 1e-300);
    const double dd_abs = std::abs(new_dead - dead);
    const double dd = dd_abs / std::max(dead, 1e-6 * vmax);
    scale = new_scale;
    dead = new_dead;
    if (ds < 1e-6 && dd < 1e-6 && round > 2) break;
    // If the point stayed inside the window, zoom in; otherwise keep width so
    // the walls can keep sliding toward a far-off optimum.
    if (ds < 0.4 * (scale_ratio - 1.0)) scale_ratio = std::max(1.0 + 1e-9, std::sqrt(scale_ratio));
    if (dd_abs < 0.4 * dead_window) dead_window = std::max(dead_window * 0.5, 1e-9 * vmax);
  }

  VolumeCalibration cal;
  cal.scale = scale;
  cal.dead_volume = dead;
  cal.rms_residual = std::sqrt(sse_or_inf(scale, dead) / static_cast<double>(series.points.size()));
  return cal;
}

double predict_theta(const VolumeCalibration& calibration, double diameter, double pumped_volume) {
  const double effective = calibration.scale * (pumped_volume - calibration.dead_volume);
  return to_degrees(contact_angle_from_sag(diameter, sag_from_volume(diameter, effective)));
}

namespace {

std::string pct(double rel) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << rel * 100.0 << "%";
  return os.str();
}

std::string fixed(double v, int prec) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

}  // namespace

ComparisonTable compare_table(const MeasurementSeries& series, const LensConfig& config,
                              const std::optional<VolumeCalibration>& calibration,
                              const std::optional<FocalRange>& reference) {
  validate(series);
  validate(config);
  ComparisonTable table;
  const VolumeCalibration fixed_model{kDefaultVolumeScale, 0.0, 0.0};

  for (const MeasurementPoint& p : series.points) {
    ComparisonRow row;
    row.pumped_volume = p.pumped_volume;
    row.theta_meas_deg = p.contact_angle_deg;
    const double r_meas =
        radius_from_contact_angle(config.diameter, to_radians(p.contact_angle_deg));
    row.f_meas_mm = plano_convex_focal(config.index, r_meas);
    try {
      row.theta_theory_deg = predict_theta(fixed_model, config.diameter, p.pumped_volume);
      const double r_theory =
          radius_from_contact_angle(config.diameter, to_radians(*row.theta_theory_deg));
      row.f_theory_mm = plano_convex_focal(config.index, r_theory);
    } catch (const std::domain_error& e) {
      row.note = std::string("theory: ") + e.what();
    }
    if (calibration) {
      try {
        row.theta_fitted_deg = predict_theta(*calibration, config.diameter, p.pumped_volume);
      } catch (const std::domain_error& e) {
        if (!row.note.empty()) row.note += "; ";
        row.note += std::string("fitted: ") + e.what();
      }
    }
    table.rows.push_back(std::move(row));
  }

  table.notes.push_back("theory column reads one stated " + series.volume_unit_label + " as " +
                        fmt(kDefaultVolumeScale) + " mm^3 of cap volume");
  if (calibration)
    table.notes.push_back("fitted column uses scale " + fmt(calibration->scale) +
                          " mm^3 per stated " + series.volume_unit_label + ", dead volume " +
                          fmt(calibration->dead_volume) + " " + series.volume_unit_label +
                          " (rms residual " + fixed(calibration->rms_residual, 3) + " deg)");

  // Focal extremes follow the angle extremes: the largest measured angle
  // gives the shortest focal length.
  const auto [min_it, max_it] =
      std::minmax_element(table.rows.begin(), table.rows.end(),
                          [](const ComparisonRow& a, const ComparisonRow& b) {
                            return a.theta_meas_deg < b.theta_meas_deg;
                          });
  const double f_short = max_it->f_meas_mm;
  const double f_long = min_it->f_meas_mm;
  table.notes.push_back("measured focal span: " + fixed(f_short, 4) + " mm to " +
                        fixed(f_long, 4) + " mm at index " + fmt(config.index));

  if (reference) {
    EndpointDiscrepancy d;
    d.reference = *reference;
    d.f_short_computed = f_short;
    d.f_long_computed = f_long;
    d.short_end_relative_error = std::abs(f_short - reference->f_short) / reference->f_short;
    d.long_end_relative_error = std::abs(f_long - reference->f_long) / reference->f_long;
    const double r_long =
        radius_from_contact_angle(config.diameter, to_radians(min_it->theta_meas_deg));
    d.implied_index = 1.0 + r_long / reference->f_long;
    const double f_long_implied = plano_convex_focal(d.implied_index, r_long);
    d.long_end_error_at_implied =
        std::abs(f_long_implied - reference->f_long) / reference->f_long;
    table.endpoint = d;

    table.notes.push_back("short-focal endpoint: computed " + fixed(f_short, 4) +
                          " mm vs reference " + fixed(reference->f_short, 4) + " mm (" +
                          pct(d.short_end_relative_error) +
                          (d.short_end_relative_error <= 0.02 ? ", within 2%)" : ")"));
    if (d.long_end_relative_error > 0.02) {
      table.notes.push_back("long-focal endpoint: computed " + fixed(f_long, 4) +
                            " mm vs reference " + fixed(reference->f_long, 4) + " mm (" +
                            pct(d.long_end_relative_error) + ") - NOT reproducible at index " +
                            fmt(config.index));
      table.notes.push_back("long-focal endpoint would match within 2% at index " +
                            fixed(d.implied_index, 4) + " (computed " +
                            fixed(f_long_implied, 4) + " mm, " +
                            pct(d.long_end_error_at_implied) + ")");
    } else {
      table.notes.push_back("long-focal endpoint: computed " + fixed(f_long, 4) +
                            " mm vs reference " + fixed(reference->f_long, 4) + " mm (" +
                            pct(d.long_end_relative_error) + ", within 2%)");
    }
  }
  return table;
}

}  // namespace liquilens
