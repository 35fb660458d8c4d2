#include "liquilens/sample_data.hpp"

#include <sstream>

namespace liquilens {

namespace {

constexpr std::string_view kSampleCsv =
    "volume,contact_angle_deg\n"
    "200,14.25\n"
    "400,22.63\n"
    "700,28.56\n"
    "1000,38.07\n"
    "1200,43.22\n"
    "1400,49.02\n";

}  // namespace

std::string_view sample_measurements_csv() { return kSampleCsv; }

const MeasurementSeries& sample_measurements() {
  static const MeasurementSeries series = [] {
    std::istringstream in{std::string(kSampleCsv)};
    MeasurementSeries s = load_measurements(in);
    s.source = "bundled sample";
    return s;
  }();
  return series;
}

FocalRange sample_reported_focal_range() { return {3.95, 9.69}; }

}  // namespace liquilens
