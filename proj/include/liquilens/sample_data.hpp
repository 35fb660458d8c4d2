#pragma once

#include <string_view>

#include "liquilens/calibration.hpp"

namespace liquilens {

// Bundled reference measurement series for a 2 mm aperture water lens:
// pumped volume (ul) vs measured contact angle (deg).
const MeasurementSeries& sample_measurements();

// The same series as raw CSV bytes, for export or re-parsing.
std::string_view sample_measurements_csv();

// Focal span reported alongside the sample measurements.
FocalRange sample_reported_focal_range();

}  // namespace liquilens
