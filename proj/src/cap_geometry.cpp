#include "liquilens/cap_geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace liquilens {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_diameter(double d) {
  if (!(d > 0.0)) throw std::domain_error("aperture diameter must be positive, got " + fmt(d));
}

void check_sag(double diameter, double sag) {
  check_diameter(diameter);
  if (!(sag > 0.0) || sag > diameter / 2.0)
    throw std::domain_error("sag must lie in (0, D/2] = (0, " + fmt(diameter / 2.0) +
                            "], got " + fmt(sag));
}

void check_contact_angle(double theta) {
  if (!(theta > 0.0) || theta > std::numbers::pi / 2.0)
    throw std::domain_error("contact angle must lie in (0, pi/2] radians, got " + fmt(theta));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double radius_from_sag(double diameter, double sag) {
  check_sag(diameter, sag);
  return (diameter * diameter + 4.0 * sag * sag) / (8.0 * sag);
}

AngleDecomposition angle_decomposition(double diameter, double sag) {
  check_sag(diameter, sag);
  const double a = diameter / 2.0;
  const double radius = radius_from_sag(diameter, sag);
  AngleDecomposition d;
  d.alpha = std::atan((radius - sag) / a);
  d.beta = std::atan(sag / a);
  d.gamma = std::numbers::pi / 2.0 - d.alpha - d.beta;
  d.theta = d.gamma + d.beta;
  return d;
}

double contact_angle_from_sag(double diameter, double sag) {
  check_sag(diameter, sag);
  const double radius = radius_from_sag(diameter, sag);
  // Complement of the rim-triangle angle atan((2R - 2h)/D). Folding the
  // pi/2 shift into atan2 keeps full relative precision for shallow caps and
  // lands on pi/2 exactly at the hemisphere.
  const double theta = std::atan2(diameter, 2.0 * radius - 2.0 * sag);
  return std::min(theta, std::numbers::pi / 2.0);
}

double sag_from_contact_angle(double diameter, double contact_angle) {
  check_diameter(diameter);
  check_contact_angle(contact_angle);
  return (diameter / 2.0) * std::tan(contact_angle / 2.0);
}

double radius_from_contact_angle(double diameter, double contact_angle) {
  check_diameter(diameter);
  check_contact_angle(contact_angle);
  return (diameter / 2.0) / std::sin(contact_angle);
}

double cap_volume_from_angle(double radius, double contact_angle) {
  if (!(radius > 0.0)) throw std::domain_error("curvature radius must be positive, got " + fmt(radius));
  check_contact_angle(contact_angle);
  // 1 - cos(theta) cancels badly for shallow caps; 2 sin^2(theta/2) is the
  // same quantity evaluated stably.
  const double s = std::sin(contact_angle / 2.0);
  const double one_minus_cos = 2.0 * s * s;
  return std::numbers::pi * radius * radius * radius / 3.0 * (2.0 + std::cos(contact_angle)) *
         one_minus_cos * one_minus_cos;
}

double cap_volume_from_sag(double diameter, double sag) {
  check_sag(diameter, sag);
  const double a = diameter / 2.0;
  return std::numbers::pi * sag * (3.0 * a * a + sag * sag) / 6.0;
}

double hemisphere_volume(double diameter) {
  check_diameter(diameter);
  return cap_volume_from_sag(diameter, diameter / 2.0);
}

double sag_from_volume(double diameter, double volume) {
  check_diameter(diameter);
  if (!(volume > 0.0)) throw std::domain_error("cap volume must be positive, got " + fmt(volume));
  const double hemi = hemisphere_volume(diameter);
  // accept values that only exceed the hemisphere through rounding of the
  // printed bound (e.g. 2.0944 for 2*pi/3) and clamp them onto it
  if (volume > hemi * (1.0 + 1e-5))
    throw std::domain_error("volume " + fmt(volume) + " mm^3 exceeds hemispherical regime (max " +
                            fmt(hemi) + " mm^3 for diameter " + fmt(diameter) + " mm)");
  if (volume >= hemi) return diameter / 2.0;
  const double a = diameter / 2.0;
  const double target = 6.0 * volume / std::numbers::pi;
  double lo = 0.0;
  double hi = a;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * (3.0 * a * a + mid * mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

CapState state_from_sag(double diameter, double sag) {
  CapState s;
  s.diameter = diameter;
  s.sag = sag;
  s.radius = radius_from_sag(diameter, sag);
  s.contact_angle = contact_angle_from_sag(diameter, sag);
  s.volume = cap_volume_from_sag(diameter, sag);
  return s;
}

}  // namespace

CapState resolve_cap(double diameter, const CapParameter& given) {
  check_diameter(diameter);
  return std::visit(
      overloaded{
          [&](Sag s) { return state_from_sag(diameter, s.mm); },
          [&](ContactAngle a) {
            return state_from_sag(diameter, sag_from_contact_angle(diameter, a.radians));
          },
          [&](CapVolume v) {
            return state_from_sag(diameter, sag_from_volume(diameter, v.mm3));
          },
      },
      given);
}

}  // namespace liquilens
