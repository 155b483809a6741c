#pragma once

#include <chrono>
#include <mutex>

namespace estmap::harvest {

using Nanos = std::chrono::nanoseconds;

/// Monotonic time source that can also wait; swapped for ManualClock in tests.
class Clock {
public:
  virtual ~Clock() = default;
  virtual Nanos now() const = 0;
  virtual void sleep_for(Nanos d) = 0;
};

class SystemClock final : public Clock {
public:
  Nanos now() const override;
  void sleep_for(Nanos d) override;
};

/// Time only moves when someone sleeps or calls advance().
class ManualClock final : public Clock {
public:
  Nanos now() const override;
  void sleep_for(Nanos d) override;
  void advance(Nanos d);
  Nanos total_slept() const;

private:
  mutable std::mutex mutex_;
  Nanos now_{0};
  Nanos slept_{0};
};

}  // namespace estmap::harvest
