#pragma once

#include <cmath>

#include "doctest.h"
#include "stalab/vec.hpp"

namespace stalab::test {

inline bool close(double got, double want, double rel, double abs_floor = 0.0) {
  return std::abs(got - want) <= std::max(rel * std::abs(want), abs_floor);
}

inline bool close(const Vec3& got, const Vec3& want, double rel, double abs_floor = 0.0) {
  return (got - want).norm() <= std::max(rel * want.norm(), abs_floor);
}

}  // namespace stalab::test
