#pragma once

#include <stdexcept>
#include <string>

namespace hsx {

/// Violated argument contract (bad domain, incompatible truncations, ...).
class precondition_error : public std::invalid_argument {
  public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested a computation the given object cannot support.
class unsupported_error : public precondition_error {
  public:
    explicit unsupported_error(const std::string& what) : precondition_error(what) {}
};

/// Runtime numeric failure (NaN ratios, quadrature breakdown, singular solve).
class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hsx
