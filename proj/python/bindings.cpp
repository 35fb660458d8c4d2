// Python bindings. Angles cross this boundary in degrees; lengths stay in mm
// and volumes in mm^3, matching the command line tool.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "liquilens/calibration.hpp"
#include "liquilens/cap_geometry.hpp"
#include "liquilens/lens_model.hpp"
#include "liquilens/ray_trace.hpp"
#include "liquilens/sample_data.hpp"
#include "liquilens/units.hpp"

namespace py = pybind11;
using namespace liquilens;

namespace {

CapState resolve_cap_kw(double diameter, std::optional<double> sag,
                        std::optional<double> contact_angle_deg, std::optional<double> volume) {
  const int given = (sag ? 1 : 0) + (contact_angle_deg ? 1 : 0) + (volume ? 1 : 0);
  if (given != 1)
    throw py::value_error("give exactly one of sag=, contact_angle_deg=, volume=");
  if (sag) return resolve_cap(diameter, Sag{*sag});
  if (contact_angle_deg) return resolve_cap(diameter, ContactAngle{to_radians(*contact_angle_deg)});
  return resolve_cap(diameter, CapVolume{*volume});
}

LensConfig make_config(double diameter, double index) { return LensConfig{diameter, index, {}}; }

}  // namespace

PYBIND11_MODULE(_liquilens, m) {
  m.doc() = "liquid plano-convex lens toolkit: cap geometry, focal model, ray tracing, "
            "pump calibration";

  // ---- cap geometry ----
  py::class_<CapState>(m, "CapState")
      .def_readonly("diameter", &CapState::diameter)
      .def_readonly("sag", &CapState::sag)
      .def_readonly("radius", &CapState::radius)
      .def_readonly("volume", &CapState::volume)
      .def_property_readonly(
          "contact_angle_deg",
          [](const CapState& c) { return to_degrees(c.contact_angle); })
      .def("__repr__", [](const CapState& c) {
        std::ostringstream out;
        out.precision(6);
        out << "CapState(diameter=" << c.diameter << ", sag=" << c.sag << ", radius=" << c.radius
            << ", contact_angle_deg=" << to_degrees(c.contact_angle) << ", volume=" << c.volume
            << ")";
        return out.str();
      });

  m.def("resolve_cap", &resolve_cap_kw, py::arg("diameter"), py::kw_only(),
        py::arg("sag") = std::nullopt, py::arg("contact_angle_deg") = std::nullopt,
        py::arg("volume") = std::nullopt,
        "Complete the spherical-cap state from exactly one defining parameter.");
  m.def("hemisphere_volume", &hemisphere_volume, py::arg("diameter"));

  // ---- thin-lens model ----
  m.def("plano_convex_focal", &plano_convex_focal, py::arg("index"), py::arg("radius"),
        "Thin-lens focal length of a plano-convex element.");
  m.def(
      "volume_to_focal",
      [](double volume, double diameter, double index) {
        return volume_to_focal(make_config(diameter, index), volume);
      },
      py::arg("volume"), py::arg("diameter") = 2.0, py::arg("index") = 1.33);
  m.def(
      "focal_to_volume",
      [](double focal, double diameter, double index) {
        return focal_to_volume(make_config(diameter, index), focal);
      },
      py::arg("focal"), py::arg("diameter") = 2.0, py::arg("index") = 1.33);
  m.def(
      "hemisphere_focal_bound",
      [](double diameter, double index) {
        return hemisphere_focal_bound(make_config(diameter, index));
      },
      py::arg("diameter") = 2.0, py::arg("index") = 1.33,
      "Shortest reachable focal length (cap at a full hemisphere).");

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("volume", &CurvePoint::volume)
      .def_readonly("contact_angle_deg", &CurvePoint::contact_angle_deg)
      .def_readonly("focal_length", &CurvePoint::focal_length)
      .def_readonly("radius", &CurvePoint::radius)
      .def_readonly("sag", &CurvePoint::sag);
  m.def(
      "theoretical_curve",
      [](double f_min, double f_max, int steps, double diameter, double index) {
        return theoretical_curve(make_config(diameter, index), f_min, f_max, steps);
      },
      py::arg("f_min"), py::arg("f_max"), py::arg("steps") = 50, py::arg("diameter") = 2.0,
      py::arg("index") = 1.33);

  // ---- ray tracing ----
  py::class_<Prescription>(m, "Prescription")
      .def(py::init([](double curved_radius, double center_thickness, double index,
                       double aperture_radius) {
             return Prescription{curved_radius, center_thickness, index, aperture_radius};
           }),
           py::arg("curved_radius"), py::arg("center_thickness"), py::arg("index"),
           py::arg("aperture_radius"))
      .def_readonly("curved_radius", &Prescription::curved_radius)
      .def_readonly("center_thickness", &Prescription::center_thickness)
      .def_readonly("index", &Prescription::index)
      .def_readonly("aperture_radius", &Prescription::aperture_radius);

  py::class_<SpotMetrics>(m, "SpotMetrics")
      .def_readonly("paraxial_focus_z", &SpotMetrics::paraxial_focus_z)
      .def_readonly("marginal_focus_z", &SpotMetrics::marginal_focus_z)
      .def_readonly("best_focus_z", &SpotMetrics::best_focus_z)
      .def_property_readonly(
          "colc_diameter_um",
          [](const SpotMetrics& s) { return s.colc_diameter * 1e3; })
      .def_property_readonly(
          "rms_radius_um",
          [](const SpotMetrics& s) { return s.rms_radius_at_best * 1e3; });

  m.def("paraxial_efl", &paraxial_efl, py::arg("prescription"));
  m.def("best_focus", &best_focus, py::arg("prescription"), py::arg("ray_count") = 101,
        "Longitudinal aberration metrics from an exact meridional fan.");

  py::class_<SimulationResult>(m, "SimulationResult")
      .def_readonly("efl", &SimulationResult::efl)
      .def_readonly("metrics", &SimulationResult::metrics)
      .def_readonly("prescription", &SimulationResult::prescription)
      .def_readonly("pupil_radius", &SimulationResult::pupil_radius)
      .def_readonly("rays_dropped", &SimulationResult::rays_dropped)
      .def_readonly("warnings", &SimulationResult::warnings);
  m.def(
      "simulate",
      [](double volume, double f_number, double diameter, double index, int rays,
         bool clamp_pupil) {
        return simulate_volume(make_config(diameter, index), volume, f_number,
                               SimulateOptions{rays, clamp_pupil});
      },
      py::arg("volume"), py::arg("f_number") = 2.8, py::arg("diameter") = 2.0,
      py::arg("index") = 1.33, py::arg("rays") = 101, py::arg("clamp_pupil") = false,
      "Trace a fill volume at a working f-number and report aberration metrics.");

  // ---- calibration ----
  py::class_<MeasurementPoint>(m, "MeasurementPoint")
      .def_readonly("pumped_volume", &MeasurementPoint::pumped_volume)
      .def_readonly("contact_angle_deg", &MeasurementPoint::contact_angle_deg);

  py::class_<MeasurementSeries>(m, "MeasurementSeries")
      .def_readonly("points", &MeasurementSeries::points)
      .def_readonly("volume_unit_label", &MeasurementSeries::volume_unit_label)
      .def_readonly("source", &MeasurementSeries::source)
      .def("__len__", [](const MeasurementSeries& s) { return s.points.size(); });

  m.def("load_measurements", &load_measurements_file, py::arg("path"),
        "Read a volume,contact_angle_deg CSV file.");
  m.def("sample_measurements", &sample_measurements, py::return_value_policy::copy,
        "Bundled 2 mm water-lens reference series.");

  py::class_<LinearFit>(m, "LinearFit")
      .def_readonly("slope", &LinearFit::slope)
      .def_readonly("intercept", &LinearFit::intercept)
      .def_readonly("r_squared", &LinearFit::r_squared)
      .def_readonly("residuals", &LinearFit::residuals);
  m.def("linear_fit", &linear_fit, py::arg("series"));

  py::class_<VolumeCalibration>(m, "VolumeCalibration")
      .def(py::init([](double scale, double dead_volume, double rms_residual) {
             return VolumeCalibration{scale, dead_volume, rms_residual};
           }),
           py::arg("scale"), py::arg("dead_volume") = 0.0, py::arg("rms_residual") = 0.0)
      .def_readonly("scale", &VolumeCalibration::scale)
      .def_readonly("dead_volume", &VolumeCalibration::dead_volume)
      .def_readonly("rms_residual", &VolumeCalibration::rms_residual);
  m.def(
      "fit_volume_model",
      [](const MeasurementSeries& series, double diameter) {
        return fit_volume_model(series, diameter);
      },
      py::arg("series"), py::arg("diameter") = 2.0);
  m.def("predict_theta", &predict_theta, py::arg("calibration"), py::arg("diameter"),
        py::arg("pumped_volume"));
  m.attr("DEFAULT_VOLUME_SCALE") = kDefaultVolumeScale;

  py::class_<FocalRange>(m, "FocalRange")
      .def(py::init([](double f_short, double f_long) {
             return FocalRange{f_short, f_long};
           }),
           py::arg("f_short"), py::arg("f_long"))
      .def_readonly("f_short", &FocalRange::f_short)
      .def_readonly("f_long", &FocalRange::f_long);
  m.def("sample_reported_focal_range", &sample_reported_focal_range);

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("pumped_volume", &ComparisonRow::pumped_volume)
      .def_readonly("theta_meas_deg", &ComparisonRow::theta_meas_deg)
      .def_readonly("theta_theory_deg", &ComparisonRow::theta_theory_deg)
      .def_readonly("theta_fitted_deg", &ComparisonRow::theta_fitted_deg)
      .def_readonly("f_meas_mm", &ComparisonRow::f_meas_mm)
      .def_readonly("f_theory_mm", &ComparisonRow::f_theory_mm)
      .def_readonly("note", &ComparisonRow::note);

  py::class_<EndpointDiscrepancy>(m, "EndpointDiscrepancy")
      .def_readonly("reference", &EndpointDiscrepancy::reference)
      .def_readonly("f_short_computed", &EndpointDiscrepancy::f_short_computed)
      .def_readonly("f_long_computed", &EndpointDiscrepancy::f_long_computed)
      .def_readonly("short_end_relative_error", &EndpointDiscrepancy::short_end_relative_error)
      .def_readonly("long_end_relative_error", &EndpointDiscrepancy::long_end_relative_error)
      .def_readonly("implied_index", &EndpointDiscrepancy::implied_index)
      .def_readonly("long_end_error_at_implied", &EndpointDiscrepancy::long_end_error_at_implied);

  py::class_<ComparisonTable>(m, "ComparisonTable")
      .def_readonly("rows", &ComparisonTable::rows)
      .def_readonly("notes", &ComparisonTable::notes)
      .def_readonly("endpoint", &ComparisonTable::endpoint);
  m.def(
      "compare",
      [](const MeasurementSeries& series, double diameter, double index, bool fit,
         std::optional<FocalRange> reference) {
        const LensConfig cfg = make_config(diameter, index);
        std::optional<VolumeCalibration> cal;
        if (fit) cal = fit_volume_model(series, diameter);
        return compare_table(series, cfg, cal, reference);
      },
      py::arg("series"), py::arg("diameter") = 2.0, py::arg("index") = 1.33,
      py::arg("fit") = true, py::arg("reference") = std::nullopt,
      "Measured vs predicted table with endpoint discrepancy analysis.");
}
