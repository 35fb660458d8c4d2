#include "liquilens/lens_model.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "liquilens/units.hpp"

using namespace liquilens;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("lensmaker: reference values") {
  CHECK(*lensmaker(2.0, 5.0, kInf) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(*lensmaker(1.33, 4.0625, kInf) == doctest::Approx(12.310606060606061).epsilon(1e-14));
  CHECK(*lensmaker(1.5, 10.0, -10.0) == doctest::Approx(10.0).epsilon(1e-14));  // biconvex
}

TEST_CASE("lensmaker: afocal combination is a distinguished result") {
  CHECK_FALSE(lensmaker(1.5, 10.0, 10.0).has_value());
  CHECK_FALSE(lensmaker(1.33, kInf, kInf).has_value());
}

TEST_CASE("lensmaker: domain") {
  CHECK_THROWS_AS(lensmaker(1.0, 5.0, kInf), std::domain_error);
  CHECK_THROWS_AS(lensmaker(0.9, 5.0, kInf), std::domain_error);
  CHECK_THROWS_AS(lensmaker(1.5, 0.0, kInf), std::domain_error);
  CHECK_THROWS_AS(lensmaker(1.5, 5.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(lensmaker(1.5, std::nan(""), kInf), std::domain_error);
}

TEST_CASE("plano-convex focal length matches the lensmaker route exactly") {
  CHECK(plano_convex_focal(1.33, 1.0) == doctest::Approx(3.0303030303030303).epsilon(1e-15));
  CHECK(plano_convex_focal(1.33, 1.3244) == doctest::Approx(4.0133333333333333).epsilon(1e-14));
  std::mt19937 rng(112233);
  std::uniform_real_distribution<double> du(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double n = 1.0 + 1e-3 + du(rng);
    const double r = 0.01 + 100.0 * du(rng);
    CHECK(plano_convex_focal(n, r) == *lensmaker(n, r, kInf));
  }
  CHECK_THROWS_AS(plano_convex_focal(1.33, -1.0), std::domain_error);
  CHECK_THROWS_AS(plano_convex_focal(1.33, 0.0), std::domain_error);
}

TEST_CASE("radius for focal: reference values and roundtrip") {
  CHECK(radius_for_focal(1.33, 12.0) == doctest::Approx(3.96).epsilon(1e-14));
  CHECK(radius_for_focal(1.33, 3.0) == doctest::Approx(0.99).epsilon(1e-14));
  std::mt19937 rng(445566);
  std::uniform_real_distribution<double> du(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double n = 1.0 + 1e-3 + du(rng);
    const double f = 0.1 + 100.0 * du(rng);
    CHECK(rel_err(plano_convex_focal(n, radius_for_focal(n, f)), f) < 1e-14);
  }
}

TEST_CASE("hemisphere focal bound") {
  const LensConfig cfg;  // D = 2, n = 1.33
  CHECK(hemisphere_focal_bound(cfg) == doctest::Approx(3.0303030303030303).epsilon(1e-15));
  // filling to the hemisphere realizes the bound
  CHECK(volume_to_focal(cfg, hemisphere_volume(cfg.diameter)) ==
        doctest::Approx(hemisphere_focal_bound(cfg)).epsilon(1e-12));
}

TEST_CASE("volume to focal: reference values") {
  const LensConfig cfg;
  CHECK(volume_to_focal(cfg, 0.2) == doctest::Approx(12.155484217424394).epsilon(1e-12));
  CHECK(volume_to_focal(cfg, 1.4) == doctest::Approx(3.1560816434054219).epsilon(1e-12));
  CHECK_THROWS_AS(volume_to_focal(cfg, 0.0), std::domain_error);
  CHECK_THROWS_WITH_AS(volume_to_focal(cfg, 3.0),
                       doctest::Contains("exceeds hemispherical regime"), std::domain_error);
}

TEST_CASE("focal to volume: reference values and unreachable focal lengths") {
  const LensConfig cfg;
  CHECK(focal_to_volume(cfg, 12.0) == doctest::Approx(0.20270666470980457).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(focal_to_volume(cfg, 3.0), doctest::Contains("unreachable focal length"),
                       std::domain_error);
  CHECK_THROWS_AS(focal_to_volume(cfg, 0.0), std::domain_error);
  CHECK_THROWS_AS(focal_to_volume(cfg, -5.0), std::domain_error);
  // The exact bound maps back to (numerically) the hemisphere fill. asin is
  // sqrt-sensitive at its edge, so roundoff in the bound inflates to ~1e-8.
  CHECK(focal_to_volume(cfg, hemisphere_focal_bound(cfg)) ==
        doctest::Approx(hemisphere_volume(cfg.diameter)).epsilon(1e-7));
}

TEST_CASE("focal to contact angle") {
  const LensConfig cfg;
  CHECK(to_degrees(focal_to_contact_angle(cfg, 12.0)) ==
        doctest::Approx(14.626994083477902).epsilon(1e-13));
  CHECK(to_degrees(focal_to_contact_angle(cfg, hemisphere_focal_bound(cfg))) ==
        doctest::Approx(90.0).epsilon(1e-7));
  CHECK(to_degrees(focal_to_contact_angle(cfg, 4.013))
        == doctest::Approx(49.035997121908297).epsilon(1e-12));
}

TEST_CASE("volume/focal roundtrip across the working range") {
  const LensConfig cfg;
  std::mt19937 rng(778899);
  std::uniform_real_distribution<double> du(0.0, 1.0);
  const double hemi = hemisphere_volume(cfg.diameter);
  for (int i = 0; i < 1000; ++i) {
    const double v = hemi * (1e-4 + (1.0 - 1e-4) * du(rng));
    const double f = volume_to_focal(cfg, v);
    CHECK(f >= hemisphere_focal_bound(cfg) * (1.0 - 1e-12));
    CHECK(rel_err(focal_to_volume(cfg, f), v) < 1e-9);
  }
}

TEST_CASE("focal length decreases as volume grows") {
  const LensConfig cfg;
  double prev = volume_to_focal(cfg, 0.01);
  for (double v = 0.1; v <= 2.0; v += 0.1) {
    const double f = volume_to_focal(cfg, v);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate(LensConfig{0.0, 1.33, {}}), std::domain_error);
  CHECK_THROWS_AS(validate(LensConfig{2.0, 1.0, {}}), std::domain_error);
  CHECK_THROWS_AS(validate(LensConfig{2.0, 1.33, -0.1}), std::domain_error);
  CHECK_NOTHROW(validate(LensConfig{}));
  CHECK_NOTHROW(validate(LensConfig{2.0, 1.33, 0.0}));
}

TEST_CASE("theoretical curve spans the requested focal grid") {
  const LensConfig cfg;
  const auto curve = theoretical_curve(cfg, 4.0, 12.0, 100);
  REQUIRE(curve.size() == 100);
  CHECK(curve.front().focal_length == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(curve.back().focal_length == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(curve.front().volume == doctest::Approx(focal_to_volume(cfg, 4.0)).epsilon(1e-15));
  CHECK(curve.back().volume == doctest::Approx(0.20270666470980457).epsilon(1e-12));
  const double hemi = hemisphere_volume(cfg.diameter);
  for (size_t i = 0; i < curve.size(); ++i) {
    const CurvePoint& p = curve[i];
    CHECK(p.volume > 0.0);
    CHECK(p.volume <= hemi * (1.0 + 1e-12));
    if (i > 0) CHECK(p.volume < curve[i - 1].volume);
    // each row is self-consistent with the cap and focal relations
    const CapState cap = resolve_cap(cfg.diameter, CapVolume{p.volume});
    CHECK(rel_err(cap.radius, p.radius) < 1e-10);
    CHECK(rel_err(cap.sag, p.sag) < 1e-10);
    CHECK(rel_err(to_degrees(cap.contact_angle), p.contact_angle_deg) < 1e-10);
    CHECK(rel_err(plano_convex_focal(cfg.index, p.radius), p.focal_length) < 1e-10);
  }
}

TEST_CASE("theoretical curve: domain") {
  const LensConfig cfg;
  CHECK_THROWS_AS(theoretical_curve(cfg, 3.0, 12.0, 10), std::domain_error);  // below bound
  CHECK_THROWS_AS(theoretical_curve(cfg, 12.0, 4.0, 10), std::domain_error);
  CHECK_THROWS_AS(theoretical_curve(cfg, 4.0, 12.0, 1), std::domain_error);
}
