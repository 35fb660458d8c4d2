#pragma once

// Independent numerical routes used only by the tests, deliberately built on
// different math than the library (quadrature instead of closed forms, raw
// normal equations instead of centered sums).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracles {

// Cap volume by composite Simpson integration of the circular slices
// pi * r(z)^2 between the aperture plane and the apex.
inline double cap_volume_by_quadrature(double diameter, double sag) {
  const double radius = (diameter * diameter + 4.0 * sag * sag) / (8.0 * sag);
  // slice radius squared in product form; the difference of squares loses
  // everything for shallow caps where R is enormous
  const auto slice = [&](double z) {
    return std::numbers::pi * (sag - z) * (2.0 * radius - sag + z);
  };
  const int m = 1024;  // even; Simpson is exact here, error is pure roundoff
  const double h = sag / m;
  double sum = slice(0.0) + slice(sag);
  for (int i = 1; i < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * slice(i * h);
  return sum * h / 3.0;
}

// Contact angle from the apex half-angle relation, 2*atan(2h/D).
inline double theta_by_half_angle(double diameter, double sag) {
  return 2.0 * std::atan(2.0 * sag / diameter);
}

// Sag solving V(h) = target by plain midpoint bisection on [tiny, D/2].
inline double sag_by_bisection(double diameter, double volume) {
  const double a = diameter / 2.0;
  const auto vol = [&](double h) {
    return std::numbers::pi * h * (3.0 * a * a + h * h) / 6.0;
  };
  double lo = 1e-300, hi = a;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (vol(mid) < volume)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

// Least squares through the raw normal equations (Cramer's rule).
inline LineFit fit_by_normal_equations(const std::vector<double>& x,
                                       const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sxx * sy - sx * sxy) / det;
  double sse = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    sse += r * r;
  }
  const double sst = syy - sy * sy / n;
  f.r_squared = sst > 0 ? 1.0 - sse / sst : 1.0;
  return f;
}

}  // namespace oracles
