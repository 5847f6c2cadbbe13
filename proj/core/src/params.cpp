#include "stalab/params.hpp"

#include <cmath>

#include "stalab/errors.hpp"

namespace stalab {

PhysicalParams::PhysicalParams(double mass, double hbar, const Vec3& k, int order)
    : mass_(mass), hbar_(hbar), k_(k), order_(order) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("mass must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("hbar must be positive");
  if (!k.allFinite() || !(k.norm() > 0.0)) throw InvalidArgument("|k| must be positive");
  if (order < 1) throw InvalidArgument("Bragg order must be >= 1");
}

PhysicalParams PhysicalParams::rubidium87(int order) {
  return PhysicalParams(kRb87Mass, kHbar, Vec3(0.0, 0.0, kRb87WaveNumber), order);
}

double PhysicalParams::recoil_frequency() const {
  return hbar_ * k_.squaredNorm() / (2.0 * mass_);
}

double PhysicalParams::photon_recoil_speed() const { return hbar_ * k_.norm() / mass_; }

Vec3 PhysicalParams::recoil_velocity() const {
  return (2.0 * order_ * hbar_ / mass_) * k_;
}

}  // namespace stalab
