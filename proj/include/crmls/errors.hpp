#pragma once

#include <stdexcept>
#include <string>

namespace crmls {

// Input data failed validation (malformed files, out-of-range values,
// referential integrity). CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Optimization produced a non-finite value. CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crmls
