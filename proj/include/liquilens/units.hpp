#pragma once

#include <numbers>

namespace liquilens {

// Library convention: lengths in mm, volumes in mm^3, angles in radians.
// Degrees appear only at external interfaces (CLI, CSV, JSON, Python).

constexpr double to_radians(double degrees) { return degrees * std::numbers::pi / 180.0; }
constexpr double to_degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

}  // namespace liquilens
