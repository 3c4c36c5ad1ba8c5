#pragma once

#include <stdexcept>
#include <string>

namespace berk {

struct InputError : std::runtime_error {
  explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

/// A residue computation left F_p (irreducible residual factor of degree > 1).
struct UnsupportedResidueExtension : std::runtime_error {
  explicit UnsupportedResidueExtension(const std::string& m)
      : std::runtime_error(m) {}
};

struct NotIntegral : std::runtime_error {
  explicit NotIntegral(const std::string& m) : std::runtime_error(m) {}
};

struct NonSeparable : std::runtime_error {
  explicit NonSeparable(const std::string& m) : std::runtime_error(m) {}
};

struct DegreeCapExceeded : std::runtime_error {
  explicit DegreeCapExceeded(const std::string& m) : std::runtime_error(m) {}
};

struct CertificationFailed : std::runtime_error {
  explicit CertificationFailed(const std::string& m) : std::runtime_error(m) {}
};

struct DivisionByZero : std::runtime_error {
  explicit DivisionByZero(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace berk
