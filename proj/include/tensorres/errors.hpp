#pragma once

#include <stdexcept>

namespace tensorres {

// A computation would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tensorres
