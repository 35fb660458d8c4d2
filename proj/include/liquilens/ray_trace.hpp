#pragma once

#include <string>
#include <vector>

#include "liquilens/lens_model.hpp"

namespace liquilens {

// Exact meridional ray trace through the plano-convex droplet lens.
// Coordinates: z along the optical axis (light travels toward +z), y
// transverse. The curved vertex sits at z = 0 with its center of curvature at
// (R, 0); the flat exit face is the plane z = center_thickness.

struct Vec2 {
  double z = 0.0;
  double y = 0.0;
};

struct MeridionalRay {
  double height = 0.0;   // transverse position at origin_z
  Vec2 direction{1.0, 0.0};  // unit vector, direction.z > 0
  double origin_z = 0.0;
};

struct Prescription {
  double curved_radius;     // mm, > 0
  double center_thickness;  // mm, >= 0
  double index;             // > 1
  double aperture_radius;   // mm, in (0, curved_radius]
};

void validate(const Prescription& p);

// Snell refraction in vector form. `direction` and `normal` are unit vectors;
// the normal's orientation does not matter, it is flipped to face the
// incoming ray. Throws TotalInternalReflectionError past the critical angle.
Vec2 snell_refract(Vec2 direction, Vec2 normal, double n_in, double n_out);

struct SurfaceHit {
  Vec2 point;
  Vec2 normal;  // unit, outward from the center of curvature
};

// Nearest forward intersection of a ray with the spherical surface whose
// vertex is at (vertex_z, 0). Throws SurfaceMissError when none exists.
SurfaceHit intersect_curved_surface(const MeridionalRay& ray, double vertex_z, double radius);

// Traces a ray entering parallel to the axis at `entry_height` through the
// curved face and out the flat face. The returned ray originates on the exit
// plane (origin_z == center_thickness).
MeridionalRay trace(const Prescription& p, double entry_height);

// z where the ray meets the axis. Throws NonConvergingRayError when the ray
// is parallel to or moving away from it.
double axial_crossing(const MeridionalRay& ray);

// Effective focal length from a near-axis ray at h = 1e-6 R, with one
// Richardson halving step to cancel the leading h^2 error.
double paraxial_efl(const Prescription& p);

struct SpotMetrics {
  // All lengths in mm; CoLC is reported in um at external interfaces.
  double paraxial_focus_z;
  double marginal_focus_z;
  double best_focus_z;      // minimax transverse spread plane
  double colc_diameter;     // circle of least confusion (spot diameter at best_focus_z)
  double rms_radius_at_best;  // RMS spot radius at the RMS-optimal plane
};

// Traces a fan of ray_count heights a*i/N, i = 1..N (marginal included) and
// locates the best-focus plane by golden-section search between the marginal
// and paraxial crossings.
SpotMetrics best_focus(const Prescription& p, int ray_count = 101);

struct SimulateOptions {
  int ray_count = 101;
  bool clamp_pupil_to_rim = false;
};

struct SimulationResult {
  double efl;
  SpotMetrics metrics;
  Prescription prescription;  // as traced, aperture possibly reduced to fit the surface
  double pupil_radius;        // requested entrance pupil radius efl / (2 F#)
  int rays_dropped;           // fan rays beyond the curved surface
  std::vector<std::string> warnings;
};

// Full aberration simulation of the lens filled to `volume`, stopped at the
// given f-number. Oversized pupils produce a warning (and optionally a clamp),
// never a silent truncation.
SimulationResult simulate_volume(const LensConfig& config, double volume, double f_number,
                                 const SimulateOptions& options = {});

}  // namespace liquilens
