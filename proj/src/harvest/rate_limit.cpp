#include "estmap/harvest/rate_limit.hpp"

#include <algorithm>
#include <cmath>

#include "estmap/util/error.hpp"

namespace estmap::harvest {

TokenBucket::TokenBucket(double requests_per_second, int burst, Clock& clock) : clock_(clock) {
  if (!(requests_per_second > 0.0)) throw InputError("rate limit must be positive");
  if (burst < 1) throw InputError("burst must be at least 1");
  interval_ = Nanos(static_cast<long long>(std::ceil(1e9 / requests_per_second)));
  tolerance_ = interval_ * (burst - 1);
}

Nanos TokenBucket::acquire() {
  auto now = clock_.now();
  if (theoretical_arrival_ == Nanos::min()) theoretical_arrival_ = now;
  auto earliest = theoretical_arrival_ - tolerance_;
  if (now < earliest) {
    clock_.sleep_for(earliest - now);
    now = clock_.now();
    // Real sleeps never return early, but guard against clocks that do.
    while (now < earliest) {
      clock_.sleep_for(earliest - now);
      now = clock_.now();
    }
  }
  theoretical_arrival_ = std::max(theoretical_arrival_, now) + interval_;
  return now;
}

}  // namespace estmap::harvest
