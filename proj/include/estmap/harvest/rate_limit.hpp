#pragma once

#include "estmap/harvest/clock.hpp"

namespace estmap::harvest {

/// Token bucket in its virtual-scheduling form: at most `burst` requests may
/// go out back to back, after which starts are spaced 1/rate apart. Integer
/// nanosecond arithmetic, so spacing is exact on a manual clock.
class TokenBucket {
public:
  TokenBucket(double requests_per_second, int burst, Clock& clock);

  /// Blocks (through the clock) until a request may start; returns its start.
  Nanos acquire();
  Nanos interval() const { return interval_; }

private:
  Nanos interval_;
  Nanos tolerance_;
  Nanos theoretical_arrival_{Nanos::min()};
  Clock& clock_;
};

}  // namespace estmap::harvest
