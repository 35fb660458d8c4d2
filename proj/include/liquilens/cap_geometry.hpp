#pragma once

#include <variant>

namespace liquilens {

// Spherical-cap description of the droplet bulging through a circular aperture.
// The cap is restricted to the sub-hemispherical regime: sag h in (0, D/2],
// contact angle theta in (0, pi/2]. Lengths in mm, volumes in mm^3, angles in
// radians.

struct CapState {
  double diameter;       // aperture diameter D
  double sag;            // apex height h above the aperture plane
  double radius;         // curvature radius R of the spherical surface
  double contact_angle;  // theta, radians
  double volume;         // cap volume, mm^3 (1 mm^3 = 1 ul)
};

// Angles of the rim construction triangle. gamma and theta are stored exactly
// as the sums/differences below so the identities hold bitwise:
//   gamma = pi/2 - alpha - beta,  theta = gamma + beta.
struct AngleDecomposition {
  double alpha;  // between the optical axis and the center-to-rim segment
  double beta;   // between the aperture plane and the apex-to-rim segment
  double gamma;
  double theta;
};

double radius_from_sag(double diameter, double sag);
AngleDecomposition angle_decomposition(double diameter, double sag);
double contact_angle_from_sag(double diameter, double sag);
double sag_from_contact_angle(double diameter, double contact_angle);
double radius_from_contact_angle(double diameter, double contact_angle);

// Dual volume forms. Both evaluate the same cap; they agree to ~1e-12 relative
// and the test suite holds them to that.
double cap_volume_from_angle(double radius, double contact_angle);
double cap_volume_from_sag(double diameter, double sag);

// Volume of the half-ball cap, the upper bound of the working regime.
double hemisphere_volume(double diameter);

// Inverse of cap_volume_from_sag by bisection on the monotone cubic
// h(3(D/2)^2 + h^2) = 6V/pi. Converges to 1e-14 relative interval width.
double sag_from_volume(double diameter, double volume);

struct Sag {
  double mm;
};
struct ContactAngle {
  double radians;
};
struct CapVolume {
  double mm3;
};
using CapParameter = std::variant<Sag, ContactAngle, CapVolume>;

// Completes the full cap state from any one defining parameter.
CapState resolve_cap(double diameter, const CapParameter& given);

}  // namespace liquilens
