#include "stalab/time.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "stalab/errors.hpp"

namespace stalab {
namespace {

detail::i128 gcd128(detail::i128 a, detail::i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const detail::i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

constexpr std::int64_t kMaxRecoveredDen = 4096;
constexpr double kRecoveryTolTicks = 1e-4;

}  // namespace

Time Time::reduced(detail::i128 num, detail::i128 den) {
  if (den == 0) throw InvalidArgument("time with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const detail::i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr detail::i128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr detail::i128 hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw std::overflow_error("time arithmetic overflow");
  return Time(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Time Time::from_ticks(std::int64_t num, std::int64_t den) { return reduced(num, den); }

Time Time::from_seconds(double s) {
  if (!std::isfinite(s)) throw InvalidArgument("time is not finite");
  const double x = s * static_cast<double>(kTicksPerSecond);
  if (std::abs(x) > 9.0e15) throw InvalidArgument("time out of representable range");

  // Continued-fraction walk for the best small-denominator approximation.
  const double whole = std::floor(x);
  double frac = x - whole;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = frac;
  for (int iter = 0; iter < 32; ++iter) {
    const double a_d = std::floor(rem);
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > kMaxRecoveredDen) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(frac - static_cast<double>(p1) / static_cast<double>(q1)) <= kRecoveryTolTicks) {
      const auto w = static_cast<std::int64_t>(whole);
      return reduced(static_cast<detail::i128>(w) * q1 + p1, q1);
    }
    const double r = rem - a_d;
    if (r <= 0.0) break;
    rem = 1.0 / r;
  }
  return reduced(static_cast<std::int64_t>(std::llround(x)), 1);
}

double Time::seconds() const noexcept {
  return static_cast<double>(num_) /
         (static_cast<double>(den_) * static_cast<double>(kTicksPerSecond));
}

Time Time::operator-() const { return reduced(-static_cast<detail::i128>(num_), den_); }

Time operator+(const Time& a, const Time& b) {
  return Time::reduced(static_cast<detail::i128>(a.num_) * b.den_ + static_cast<detail::i128>(b.num_) * a.den_,
                       static_cast<detail::i128>(a.den_) * b.den_);
}

Time operator-(const Time& a, const Time& b) { return a + (-b); }

Time operator*(const Time& a, std::int64_t k) {
  return Time::reduced(static_cast<detail::i128>(a.num_) * k, a.den_);
}

Time operator/(const Time& a, std::int64_t k) {
  return Time::reduced(a.num_, static_cast<detail::i128>(a.den_) * k);
}

std::strong_ordering operator<=>(const Time& a, const Time& b) noexcept {
  const detail::i128 lhs = static_cast<detail::i128>(a.num_) * b.den_;
  const detail::i128 rhs = static_cast<detail::i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Time::to_string() const {
  std::string out = std::to_string(num_);
  if (den_ != 1) out += "/" + std::to_string(den_);
  return out + " ns";
}

}  // namespace stalab
