#pragma once

#include <stdexcept>
#include <string>

namespace sumfree {

// Raised when an operation's documented precondition does not hold.
class precondition_error : public std::invalid_argument {
 public:
  explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an exhaustive enumeration would exceed its configured cap.
class cap_exceeded : public precondition_error {
 public:
  cap_exceeded(const std::string& what, int cap)
      : precondition_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  int cap() const noexcept { return cap_; }

 private:
  int cap_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw precondition_error(message);
}

}  // namespace sumfree
