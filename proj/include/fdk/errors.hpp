#pragma once

#include <stdexcept>
#include <string>

namespace fdk {

// Raised when an instance exceeds what the exhaustive routines are sized for.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fdk
