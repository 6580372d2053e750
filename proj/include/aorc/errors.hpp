#pragma once

#include <stdexcept>
#include <string>

namespace aorc {

// Invalid parameter or input value (alpha out of range, bad kappa, malformed
// p-value vector, ...). CLI maps this to exit code 3.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Problem size exceeds the exact-computation cap. CLI maps this to exit code 4.
class SizeCapError : public std::runtime_error {
 public:
  explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aorc
