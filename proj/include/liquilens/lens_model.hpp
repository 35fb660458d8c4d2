#pragma once

#include <optional>
#include <vector>

#include "liquilens/cap_geometry.hpp"

namespace liquilens {

// Thin-lens model of the droplet lens: a plano-convex element whose curved
// face is the cap surface. Pass std::numeric_limits<double>::infinity() for a
// flat surface radius.

struct LensConfig {
  double diameter = 2.0;  // aperture diameter, mm
  double index = 1.33;    // refractive index of the filling liquid
  // Axial thickness for ray tracing; defaults to the cap sag when unset.
  std::optional<double> center_thickness;
};

void validate(const LensConfig& config);

// Lensmaker focal length. Returns std::nullopt for an afocal combination
// (zero optical power), e.g. matched radii.
std::optional<double> lensmaker(double index, double r1, double r2);

double plano_convex_focal(double index, double radius);
double radius_for_focal(double index, double focal);

// Shortest focal length the sub-hemispherical cap can reach: D / (2(n-1)).
double hemisphere_focal_bound(const LensConfig& config);

double volume_to_focal(const LensConfig& config, double volume);

// Inverse of volume_to_focal. Throws for focal lengths below the hemisphere
// bound ("unreachable focal length").
double focal_to_volume(const LensConfig& config, double focal);

// Contact angle (radians) that realizes a given focal length.
double focal_to_contact_angle(const LensConfig& config, double focal);

struct CurvePoint {
  double volume;
  double contact_angle_deg;
  double focal_length;
  double radius;
  double sag;
};

// Samples the focal-length/volume relation on a uniform focal grid of `steps`
// points spanning [f_min, f_max] inclusive.
std::vector<CurvePoint> theoretical_curve(const LensConfig& config, double f_min, double f_max,
                                          int steps);

}  // namespace liquilens
