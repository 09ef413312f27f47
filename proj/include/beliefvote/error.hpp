#pragma once

#include <stdexcept>
#include <string>

namespace beliefvote {

/// Raised when an enumeration would exceed its configured cardinality cap.
/// Caps are never applied by silent truncation.
class CapExceeded : public std::length_error {
 public:
  explicit CapExceeded(const std::string& what) : std::length_error(what) {}
};

}  // namespace beliefvote
