#pragma once

#include <stdexcept>
#include <string>

namespace twlab {

// Raised when an exact or exhaustive computation would exceed its configured
// cap. Callers get a message naming the cap; nothing is silently truncated.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twlab
