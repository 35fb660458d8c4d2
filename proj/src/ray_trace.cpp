#include "liquilens/ray_trace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "liquilens/errors.hpp"

namespace liquilens {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double dot(Vec2 a, Vec2 b) { return a.z * b.z + a.y * b.y; }

double norm(Vec2 v) { return std::hypot(v.z, v.y); }

Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  return {v.z / n, v.y / n};
}

void check_unit(Vec2 v, const char* what) {
  if (std::abs(norm(v) - 1.0) > 1e-9)
    throw std::domain_error(std::string(what) + " must be a unit vector, |v| = " + fmt(norm(v)));
}

}  // namespace

void validate(const Prescription& p) {
  if (!(p.curved_radius > 0.0))
    throw std::domain_error("curvature radius must be positive, got " + fmt(p.curved_radius));
  if (!(p.center_thickness >= 0.0))
    throw std::domain_error("center thickness must be non-negative, got " +
                            fmt(p.center_thickness));
  if (!(p.index > 1.0))
    throw std::domain_error("refractive index must exceed 1, got " + fmt(p.index));
  if (!(p.aperture_radius > 0.0) || p.aperture_radius > p.curved_radius)
    throw std::domain_error("aperture radius must lie in (0, R] = (0, " + fmt(p.curved_radius) +
                            "], got " + fmt(p.aperture_radius));
}

Vec2 snell_refract(Vec2 direction, Vec2 normal, double n_in, double n_out) {
  if (!(n_in >= 1.0) || !(n_out >= 1.0))
    throw std::domain_error("refractive indices must be >= 1, got " + fmt(n_in) + " -> " +
                            fmt(n_out));
  check_unit(direction, "ray direction");
  check_unit(normal, "surface normal");
  direction = normalized(direction);
  normal = normalized(normal);
  double c = -dot(direction, normal);
  if (c < 0.0) {  // make the normal oppose the incoming ray
    normal = {-normal.z, -normal.y};
    c = -c;
  }
  const double r = n_in / n_out;
  const double k = 1.0 - r * r * (1.0 - c * c);
  if (k < 0.0)
    throw TotalInternalReflectionError(
        "total internal reflection: sin(theta_t) would be " +
        fmt(r * std::sqrt(1.0 - c * c)) + " for indices " + fmt(n_in) + " -> " + fmt(n_out));
  const double f = r * c - std::sqrt(k);
  return normalized({r * direction.z + f * normal.z, r * direction.y + f * normal.y});
}

SurfaceHit intersect_curved_surface(const MeridionalRay& ray, double vertex_z, double radius) {
  if (!(radius > 0.0))
    throw std::domain_error("curvature radius must be positive, got " + fmt(radius));
  check_unit(ray.direction, "ray direction");
  if (!(ray.direction.z > 0.0))
    throw std::domain_error("ray must propagate toward +z, direction.z = " +
                            fmt(ray.direction.z));
  const Vec2 center{vertex_z + radius, 0.0};
  const Vec2 oc{ray.origin_z - center.z, ray.height - center.y};
  const double b = dot(oc, ray.direction);
  const double c = dot(oc, oc) - radius * radius;
  double disc = b * b - c;
  if (disc < 0.0) {
    // allow grazing contact that misses only by roundoff
    if (disc > -1e-12 * radius * radius)
      disc = 0.0;
    else
      throw SurfaceMissError("ray at height " + fmt(ray.height) +
                             " misses the curved surface of radius " + fmt(radius));
  }
  const double root = std::sqrt(disc);
  double s = -b - root;  // nearer intersection first
  if (s < 0.0) s = -b + root;
  if (s < 0.0)
    throw SurfaceMissError("curved surface lies behind the ray starting at z = " +
                           fmt(ray.origin_z));
  const Vec2 point{ray.origin_z + s * ray.direction.z, ray.height + s * ray.direction.y};
  const Vec2 normal{(point.z - center.z) / radius, (point.y - center.y) / radius};
  return {point, normalized(normal)};
}

MeridionalRay trace(const Prescription& p, double entry_height) {
  validate(p);
  if (std::abs(entry_height) > p.aperture_radius)
    throw std::domain_error("entry height " + fmt(entry_height) + " is outside the aperture " +
                            fmt(p.aperture_radius));
  const MeridionalRay incoming{entry_height, {1.0, 0.0}, -p.curved_radius};
  const SurfaceHit hit = intersect_curved_surface(incoming, 0.0, p.curved_radius);
  const Vec2 inside = snell_refract(incoming.direction, hit.normal, 1.0, p.index);
  // Propagate to the flat exit face; a virtual (backward) step is fine, the
  // surfaces are treated sequentially.
  const double s = (p.center_thickness - hit.point.z) / inside.z;
  const double exit_height = hit.point.y + s * inside.y;
  const Vec2 outgoing = snell_refract(inside, Vec2{1.0, 0.0}, p.index, 1.0);
  return {exit_height, outgoing, p.center_thickness};
}

double axial_crossing(const MeridionalRay& ray) {
  check_unit(ray.direction, "ray direction");
  if (!(ray.direction.z > 0.0))
    throw std::domain_error("ray must propagate toward +z, direction.z = " +
                            fmt(ray.direction.z));
  const double slope = ray.direction.y / ray.direction.z;
  if (!(ray.height * slope < 0.0))
    throw NonConvergingRayError("ray at height " + fmt(ray.height) + " with slope " + fmt(slope) +
                                " does not converge toward the axis");
  return ray.origin_z - ray.height / slope;
}

namespace {

struct TracedRay {
  double exit_height;
  double slope;  // dy/dz after the exit face
};

TracedRay trace_exit(const Prescription& p, double height) {
  const MeridionalRay out = trace(p, height);
  return {out.height, out.direction.y / out.direction.z};
}

double crossing_of(const Prescription& p, double height) {
  return axial_crossing(trace(p, height));
}

// Transverse spread of the fan at plane z (rays originate on the exit face).
double spread_at(const std::vector<TracedRay>& rays, double exit_z, double z) {
  double worst = 0.0;
  for (const TracedRay& r : rays)
    worst = std::max(worst, std::abs(r.exit_height + r.slope * (z - exit_z)));
  return worst;
}

SpotMetrics metrics_from_fan(const Prescription& p, const std::vector<TracedRay>& rays) {
  SpotMetrics m;
  m.paraxial_focus_z = [&] {
    const double h = 1e-6 * p.curved_radius;
    const double z1 = crossing_of(p, std::min(h, p.aperture_radius));
    const double z2 = crossing_of(p, std::min(h / 2.0, p.aperture_radius));
    return (4.0 * z2 - z1) / 3.0;
  }();
  const TracedRay& marginal = rays.back();
  m.marginal_focus_z =
      p.center_thickness - marginal.exit_height / marginal.slope;

  // The spread is a max of |affine| functions of z: convex and piecewise
  // linear, so golden-section search brackets its single minimum.
  double lo = std::min(m.marginal_focus_z, m.paraxial_focus_z);
  double hi = std::max(m.marginal_focus_z, m.paraxial_focus_z);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = spread_at(rays, p.center_thickness, x1);
  double f2 = spread_at(rays, p.center_thickness, x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = spread_at(rays, p.center_thickness, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = spread_at(rays, p.center_thickness, x2);
    }
  }
  m.best_focus_z = 0.5 * (lo + hi);
  m.colc_diameter = 2.0 * spread_at(rays, p.center_thickness, m.best_focus_z);

  // RMS-optimal plane has a closed form: d/dz sum (y_i + s_i dz)^2 = 0.
  double sys = 0.0, sss = 0.0;
  for (const TracedRay& r : rays) {
    sys += r.exit_height * r.slope;
    sss += r.slope * r.slope;
  }
  const double dz = sss > 0.0 ? -sys / sss : 0.0;
  double sum2 = 0.0;
  for (const TracedRay& r : rays) {
    const double y = r.exit_height + r.slope * dz;
    sum2 += y * y;
  }
  m.rms_radius_at_best = std::sqrt(sum2 / static_cast<double>(rays.size()));
  return m;
}

std::vector<TracedRay> fan(const Prescription& p, int ray_count) {
  if (ray_count < 3)
    throw std::domain_error("ray fan needs at least 3 rays, got " + std::to_string(ray_count));
  std::vector<TracedRay> rays;
  rays.reserve(static_cast<size_t>(ray_count));
  for (int i = 1; i <= ray_count; ++i)
    rays.push_back(trace_exit(p, p.aperture_radius * i / ray_count));
  return rays;
}

}  // namespace

double paraxial_efl(const Prescription& p) {
  validate(p);
  const double h = std::min(1e-6 * p.curved_radius, p.aperture_radius);
  const auto efl_at = [&](double height) {
    const TracedRay r = trace_exit(p, height);
    return -height / r.slope;
  };
  const double e1 = efl_at(h);
  const double e2 = efl_at(h / 2.0);
  return (4.0 * e2 - e1) / 3.0;
}

SpotMetrics best_focus(const Prescription& p, int ray_count) {
  validate(p);
  return metrics_from_fan(p, fan(p, ray_count));
}

SimulationResult simulate_volume(const LensConfig& config, double volume, double f_number,
                                 const SimulateOptions& options) {
  validate(config);
  if (!(f_number > 0.0))
    throw std::domain_error("f-number must be positive, got " + fmt(f_number));
  if (options.ray_count < 3)
    throw std::domain_error("ray fan needs at least 3 rays, got " +
                            std::to_string(options.ray_count));
  const CapState cap = resolve_cap(config.diameter, CapVolume{volume});
  const double thickness = config.center_thickness.value_or(cap.sag);
  const double efl_thin = plano_convex_focal(config.index, cap.radius);
  const double pupil = efl_thin / (2.0 * f_number);
  const double rim = config.diameter / 2.0;

  SimulationResult result;
  result.pupil_radius = pupil;
  result.rays_dropped = 0;
  double fan_radius = pupil;
  if (pupil > rim) {
    if (options.clamp_pupil_to_rim) {
      fan_radius = rim;
      result.warnings.push_back("entrance pupil radius " + fmt(pupil) +
                                " mm clamped to the lens rim " + fmt(rim) + " mm");
    } else {
      result.warnings.push_back("entrance pupil radius " + fmt(pupil) +
                                " mm exceeds the lens rim " + fmt(rim) + " mm");
    }
  }

  // Build the fan by hand so rays beyond the curved surface can be dropped
  // and counted instead of aborting the whole simulation.
  std::vector<TracedRay> rays;
  rays.reserve(static_cast<size_t>(options.ray_count));
  Prescription p{cap.radius, thickness, config.index, std::min(fan_radius, cap.radius)};
  validate(p);
  for (int i = 1; i <= options.ray_count; ++i) {
    const double h = fan_radius * i / options.ray_count;
    if (h > cap.radius) {
      ++result.rays_dropped;
      continue;
    }
    rays.push_back(trace_exit(p, h));
  }
  if (rays.size() < 3)
    throw std::domain_error("fewer than 3 fan rays intersect the curved surface");
  if (result.rays_dropped > 0)
    result.warnings.push_back(std::to_string(result.rays_dropped) +
                              " fan rays beyond the curved surface were dropped");

  result.prescription = p;
  result.efl = paraxial_efl(p);
  result.metrics = metrics_from_fan(p, rays);
  return result;
}

}  // namespace liquilens
