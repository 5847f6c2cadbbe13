#include <stdexcept>

#include "support.hpp"
#include "stalab/errors.hpp"
#include "stalab/time.hpp"

using namespace stalab;

TEST_CASE("time arithmetic is exact") {
  const Time t = milliseconds(100);
  CHECK(t.num() == 100'000'000);
  CHECK((t / 3) * 3 == t);
  CHECK((t / 3).den() == 3);
  CHECK(-(-t) == t);
  CHECK(t - t == Time{});
  CHECK(milliseconds(1) + microseconds(-1000) == Time{});
  CHECK(nanoseconds(1) / 7 < nanoseconds(1) / 6);
}

TEST_CASE("from_seconds recovers small-denominator rationals") {
  CHECK(seconds(0.1) == milliseconds(100));
  CHECK(seconds(1e-9 / 3) == nanoseconds(1) / 3);
  CHECK(seconds(-2.5e-6) == nanoseconds(-2500));
  CHECK_THROWS_AS(seconds(std::nan("")), InvalidArgument);
}

TEST_CASE("zero denominator and overflow are rejected") {
  CHECK_THROWS_AS(Time::from_ticks(1, 0), InvalidArgument);
  const Time big = Time::from_ticks(std::int64_t{1} << 62);
  CHECK_THROWS_AS(big * 4, std::overflow_error);
}

TEST_CASE("to_string") {
  CHECK(nanoseconds(5).to_string() == "5 ns");
  CHECK((nanoseconds(1) / 3).to_string() == "1/3 ns");
}
