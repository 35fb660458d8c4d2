#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liquilens/lens_model.hpp"

namespace liquilens {

// Calibration of pumped-volume readings against measured contact angles.
// This module works in the measurement units: degrees for angles, the pump's
// stated unit (nominally ul) for volumes.

struct MeasurementPoint {
  double pumped_volume;      // pump reading, stated unit
  double contact_angle_deg;  // measured contact angle
};

struct MeasurementSeries {
  std::vector<MeasurementPoint> points;
  std::string volume_unit_label = "ul";
  std::string source;  // file path or other origin tag
};

// Requires >= 2 points, strictly increasing volumes, angles in (0, 90) deg.
void validate(const MeasurementSeries& series);

// Reads the two-column CSV "volume,contact_angle_deg". Header must match
// exactly; every malformed or out-of-order row is reported.
MeasurementSeries load_measurements(std::istream& in);
MeasurementSeries load_measurements_file(const std::string& path);

struct LinearFit {
  double slope;      // deg per stated volume unit
  double intercept;  // deg
  double r_squared;
  std::vector<double> residuals;  // measured minus fitted, deg
};

// Ordinary least squares of contact angle on pumped volume.
LinearFit linear_fit(const MeasurementSeries& series);

// Two-parameter mapping from pump readings to geometric cap volume:
//   effective mm^3 = scale * (pumped_volume - dead_volume).
struct VolumeCalibration {
  double scale;         // mm^3 per stated unit
  double dead_volume;   // stated unit
  double rms_residual;  // deg, over the fitted series
};

// Fixed interpretation used for theory columns when no fit is requested: one
// stated unit is read as 1e-3 mm^3 of cap volume. It is reported next to any
// fitted values, never silently substituted for them.
inline constexpr double kDefaultVolumeScale = 1e-3;

// Least-squares fit of (scale, dead_volume) by a coarse grid (log-spaced
// scale in [1e-5, 1], dead volume in [0, max pumped volume)) refined by
// coordinate descent to 1e-6 relative. Parameter pairs pushing any point out
// of the cap domain are infeasible; ties resolve to the lowest scale, then
// the lowest dead volume.
VolumeCalibration fit_volume_model(const MeasurementSeries& series, double diameter);

// Contact angle (deg) predicted by a calibration at one pump reading.
double predict_theta(const VolumeCalibration& calibration, double diameter, double pumped_volume);

struct FocalRange {
  double f_short;  // mm
  double f_long;   // mm
};

struct ComparisonRow {
  double pumped_volume;
  double theta_meas_deg;
  std::optional<double> theta_theory_deg;  // fixed interpretation
  std::optional<double> theta_fitted_deg;  // fitted calibration, when given
  double f_meas_mm;                        // focal length implied by the measured angle
  std::optional<double> f_theory_mm;
  std::string note;  // set when a prediction falls outside the cap domain
};

// Relative agreement of the measured focal extremes with a reference span,
// and the refractive index that would reconcile the long end.
struct EndpointDiscrepancy {
  FocalRange reference;
  double f_short_computed;
  double f_long_computed;
  double short_end_relative_error;
  double long_end_relative_error;
  double implied_index;                  // index matching the reference long end
  double long_end_error_at_implied;      // relative, recomputed with implied_index
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::vector<std::string> notes;
  std::optional<EndpointDiscrepancy> endpoint;
};

// Side-by-side table of measured angles, fixed-interpretation theory, and
// (optionally) fitted-calibration predictions plus implied focal lengths.
// Out-of-domain predictions mark their row rather than dropping it.
ComparisonTable compare_table(const MeasurementSeries& series, const LensConfig& config,
                              const std::optional<VolumeCalibration>& calibration = {},
                              const std::optional<FocalRange>& reference = {});

}  // namespace liquilens
