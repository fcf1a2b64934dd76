#pragma once

#include <cmath>
#include <span>

namespace vpstealth {

/// Neumaier (improved Kahan) compensated accumulator in extended precision.
class CompensatedSum {
public:
  void add(long double x) noexcept {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(long double x) noexcept {
    add(x);
    return *this;
  }

  long double value() const noexcept { return sum_ + carry_; }

private:
  long double sum_ = 0.0L;
  long double carry_ = 0.0L;
};

inline long double compensated_sum(std::span<const long double> xs) noexcept {
  CompensatedSum acc;
  for (long double x : xs) acc.add(x);
  return acc.value();
}

/// x·ln(x) with the convention 0·ln 0 = 0.
inline long double xlogx(long double x) noexcept {
  return x == 0.0L ? 0.0L : x * std::log(x);
}

}  // namespace vpstealth
