#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace stalab {

using Vec3 = Eigen::Vector3d;

inline Vec3 zero3() { return Vec3::Zero(); }

/// Relative/absolute closeness for vectors, `scale` sets the absolute floor.
inline bool near(const Vec3& a, const Vec3& b, double rel, double scale) {
  return (a - b).norm() <= rel * scale;
}

}  // namespace stalab
