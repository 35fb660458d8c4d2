#pragma once

#include <stdexcept>
#include <string>

namespace liquilens {

// Refraction attempted past the critical angle.
class TotalInternalReflectionError : public std::domain_error {
 public:
  explicit TotalInternalReflectionError(const std::string& what) : std::domain_error(what) {}
};

// Ray has no forward intersection with a surface.
class SurfaceMissError : public std::domain_error {
 public:
  explicit SurfaceMissError(const std::string& what) : std::domain_error(what) {}
};

// Ray is parallel to or diverging from the optical axis where a crossing was required.
class NonConvergingRayError : public std::domain_error {
 public:
  explicit NonConvergingRayError(const std::string& what) : std::domain_error(what) {}
};

// Volume-model search found no parameter pair keeping every point in the cap domain.
class NoFeasibleModelError : public std::domain_error {
 public:
  explicit NoFeasibleModelError(const std::string& what) : std::domain_error(what) {}
};

// Measurement CSV is malformed or violates series requirements.
// line() is 1-based; 0 when no single line is to blame.
class CsvParseError : public std::runtime_error {
 public:
  explicit CsvParseError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace liquilens
