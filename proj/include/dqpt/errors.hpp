#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dqpt {

/// A momentum mode where |d(k)| = 0: the gap closes and the Bloch direction
/// is undefined. Callers decide whether to exclude the mode; we never skip
/// silently.
class DegenerateModeError : public std::runtime_error {
 public:
  explicit DegenerateModeError(const std::string& what,
                               double k = std::nan(""))
      : std::runtime_error(what), k_(k) {}
  double k() const { return k_; }

 private:
  double k_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature gave up before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_tol)
      : std::runtime_error(what), achieved_(achieved_tol) {}
  double achieved_tolerance() const { return achieved_; }

 private:
  double achieved_;
};

}  // namespace dqpt
