#pragma once

#include <chrono>
#include <stdexcept>

namespace gplan {

class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cooperative wall-clock budget; long loops poll expired() and bail out.
struct Deadline {
  std::chrono::steady_clock::time_point due;

  static Deadline after_ms(double ms) {
    return {std::chrono::steady_clock::now() +
            std::chrono::microseconds(static_cast<int64_t>(ms * 1000.0))};
  }
  bool expired() const { return std::chrono::steady_clock::now() >= due; }
};

}  // namespace gplan
