#pragma once

#include <chrono>
#include <cstdint>

namespace polyeq {

// Cooperative cancellation: solvers poll expired() once per pivot or
// iteration and return their best partial result when the budget runs out.
class Deadline {
 public:
  Deadline() : enabled_(false) {}

  static Deadline never() { return Deadline(); }

  static Deadline after_ms(std::int64_t ms) {
    Deadline d;
    d.enabled_ = true;
    d.at_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    return d;
  }

  bool expired() const {
    return enabled_ && std::chrono::steady_clock::now() >= at_;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point at_;
};

}  // namespace polyeq
