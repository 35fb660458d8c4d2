#include "liquilens/lens_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "liquilens/units.hpp"

namespace liquilens {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_index(double n) {
  if (!(n > 1.0))
    throw std::domain_error("refractive index must exceed 1, got " + fmt(n));
}

}  // namespace

void validate(const LensConfig& config) {
  if (!(config.diameter > 0.0))
    throw std::domain_error("aperture diameter must be positive, got " + fmt(config.diameter));
  check_index(config.index);
  if (config.center_thickness && !(*config.center_thickness >= 0.0))
    throw std::domain_error("center thickness must be non-negative, got " +
                            fmt(*config.center_thickness));
}

std::optional<double> lensmaker(double index, double r1, double r2) {
  check_index(index);
  if (r1 == 0.0 || r2 == 0.0 || std::isnan(r1) || std::isnan(r2))
    throw std::domain_error("surface radius must be nonzero (use infinity for a flat face)");
  const double c1 = std::isinf(r1) ? 0.0 : 1.0 / r1;
  const double c2 = std::isinf(r2) ? 0.0 : 1.0 / r2;
  const double power = (index - 1.0) * (c1 - c2);
  if (power == 0.0) return std::nullopt;
  return 1.0 / power;
}

double plano_convex_focal(double index, double radius) {
  if (!(radius > 0.0))
    throw std::domain_error("curvature radius must be positive, got " + fmt(radius));
  // Route through lensmaker so the two stay exactly consistent.
  return *lensmaker(index, radius, std::numeric_limits<double>::infinity());
}

double radius_for_focal(double index, double focal) {
  check_index(index);
  if (!(focal > 0.0)) throw std::domain_error("focal length must be positive, got " + fmt(focal));
  return focal * (index - 1.0);
}

double hemisphere_focal_bound(const LensConfig& config) {
  validate(config);
  return config.diameter / (2.0 * (config.index - 1.0));
}

double volume_to_focal(const LensConfig& config, double volume) {
  validate(config);
  const CapState cap = resolve_cap(config.diameter, CapVolume{volume});
  return plano_convex_focal(config.index, cap.radius);
}

namespace {

// Shared inverse chain: focal -> curvature radius -> contact angle.
double contact_angle_for_focal(const LensConfig& config, double focal) {
  const double bound = hemisphere_focal_bound(config);
  const double radius = radius_for_focal(config.index, focal);
  const double s = (config.diameter / 2.0) / radius;
  if (s > 1.0 + 1e-9)
    throw std::domain_error("unreachable focal length: " + fmt(focal) +
                            " mm is below the hemisphere bound " + fmt(bound) +
                            " mm for diameter " + fmt(config.diameter) + " mm, index " +
                            fmt(config.index));
  return std::asin(std::min(s, 1.0));
}

}  // namespace

double focal_to_volume(const LensConfig& config, double focal) {
  const double theta = contact_angle_for_focal(config, focal);
  const double sag = sag_from_contact_angle(config.diameter, theta);
  return cap_volume_from_sag(config.diameter, sag);
}

double focal_to_contact_angle(const LensConfig& config, double focal) {
  return contact_angle_for_focal(config, focal);
}

std::vector<CurvePoint> theoretical_curve(const LensConfig& config, double f_min, double f_max,
                                          int steps) {
  validate(config);
  if (steps < 2) throw std::domain_error("curve needs at least 2 steps, got " + fmt(steps));
  if (!(f_min < f_max))
    throw std::domain_error("curve range needs f_min < f_max, got [" + fmt(f_min) + ", " +
                            fmt(f_max) + "]");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double f = f_min + (f_max - f_min) * i / (steps - 1);
    const double volume = focal_to_volume(config, f);
    const CapState cap = resolve_cap(config.diameter, CapVolume{volume});
    out.push_back({cap.volume, to_degrees(cap.contact_angle), f, cap.radius, cap.sag});
  }
  return out;
}

}  // namespace liquilens
