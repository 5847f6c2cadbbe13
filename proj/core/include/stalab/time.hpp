#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace stalab {

namespace detail {
__extension__ typedef __int128 i128;
}  // namespace detail

/// Exact event time, held as a reduced rational number of 1 ns ticks.
///
/// Breakpoint bookkeeping (sorting, merging, mirroring about t = 0, window
/// checks) is done on these values so that coincidences are decided exactly.
/// Physics is evaluated in double precision through `seconds()`.
class Time {
 public:
  static constexpr std::int64_t kTicksPerSecond = 1'000'000'000;

  constexpr Time() = default;

  static Time from_ticks(std::int64_t num, std::int64_t den = 1);

  /// Nearest tick-rational with denominator <= 4096 when one lies within
  /// 1e-4 tick of `s`, otherwise the nearest whole tick.
  static Time from_seconds(double s);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double seconds() const noexcept;
  double ticks() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  Time operator-() const;
  friend Time operator+(const Time& a, const Time& b);
  friend Time operator-(const Time& a, const Time& b);
  friend Time operator*(const Time& a, std::int64_t k);
  friend Time operator*(std::int64_t k, const Time& a) { return a * k; }
  friend Time operator/(const Time& a, std::int64_t k);
  Time& operator+=(const Time& o) { return *this = *this + o; }
  Time& operator-=(const Time& o) { return *this = *this - o; }

  friend bool operator==(const Time& a, const Time& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Time& a, const Time& b) noexcept;

  std::string to_string() const;

 private:
  constexpr Time(std::int64_t num, std::int64_t den) : num_(num), den_(den) {}
  static Time reduced(detail::i128 num, detail::i128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Time seconds(double s) { return Time::from_seconds(s); }
inline Time milliseconds(std::int64_t ms) { return Time::from_ticks(ms * 1'000'000); }
inline Time microseconds(std::int64_t us) { return Time::from_ticks(us * 1'000); }
inline Time nanoseconds(std::int64_t ns) { return Time::from_ticks(ns); }

}  // namespace stalab
