#include "estmap/harvest/clock.hpp"

#include <thread>

namespace estmap::harvest {

Nanos SystemClock::now() const {
  return std::chrono::duration_cast<Nanos>(std::chrono::steady_clock::now().time_since_epoch());
}

void SystemClock::sleep_for(Nanos d) {
  if (d > Nanos::zero()) std::this_thread::sleep_for(d);
}

Nanos ManualClock::now() const {
  std::scoped_lock lock(mutex_);
  return now_;
}

void ManualClock::sleep_for(Nanos d) {
  std::scoped_lock lock(mutex_);
  if (d > Nanos::zero()) {
    now_ += d;
    slept_ += d;
  }
}

void ManualClock::advance(Nanos d) {
  std::scoped_lock lock(mutex_);
  now_ += d;
}

Nanos ManualClock::total_slept() const {
  std::scoped_lock lock(mutex_);
  return slept_;
}

}  // namespace estmap::harvest
