#pragma once

#include "stalab/vec.hpp"

namespace stalab {

/// Atomic species and laser geometry. All quantities SI.
class PhysicalParams {
 public:
  /// Throws InvalidArgument unless mass > 0, hbar > 0, |k| > 0 and order >= 1.
  PhysicalParams(double mass, double hbar, const Vec3& k, int order);

  /// Rubidium-87 on the 780 nm line with k along +z. Repository default, used
  /// for examples and CLI presets.
  static PhysicalParams rubidium87(int order = 1);

  static constexpr double kHbar = 1.054571817e-34;
  static constexpr double kRb87Mass = 1.443e-25;
  static constexpr double kRb87WaveNumber = 8.055e6;

  double mass() const noexcept { return mass_; }
  double hbar() const noexcept { return hbar_; }
  const Vec3& k() const noexcept { return k_; }
  int order() const noexcept { return order_; }

  double k_norm() const { return k_.norm(); }
  Vec3 k_hat() const { return k_ / k_.norm(); }

  /// hbar |k|^2 / 2m, the single-photon recoil frequency (rad/s).
  double recoil_frequency() const;
  /// hbar |k| / m, the single-photon recoil speed (m/s).
  double photon_recoil_speed() const;
  /// 2 n hbar k / m, the Bragg kick of order n (m/s).
  Vec3 recoil_velocity() const;
  /// m / hbar (s/m^2); converts velocity into wave vector.
  double mass_over_hbar() const { return mass_ / hbar_; }

  PhysicalParams with_order(int order) const { return PhysicalParams(mass_, hbar_, k_, order); }

 private:
  double mass_;
  double hbar_;
  Vec3 k_;
  int order_;
};

}  // namespace stalab
