#pragma once

#include <stdexcept>

namespace d4 {

/// A mathematical precondition was violated by the caller.
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A certified computation could not be decided within the precision cap.
class PrecisionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A search exhausted its configured budget (depth, steps, ...).
class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace d4
