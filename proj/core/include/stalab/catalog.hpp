#pragma once

#include <array>

#include "stalab/params.hpp"
#include "stalab/sequence.hpp"
#include "stalab/time.hpp"
#include "stalab/vec.hpp"

namespace stalab {

/// Fields shared by every catalog sequence.
struct Environment {
  Vec3 gravity = Vec3::Zero();
  Vec3 rotation = Vec3::Zero();
  Vec3 initial_velocity = Vec3::Zero();
};

/// Laser phase of each Bragg pulse, in pulse order.
using PulsePhases = std::array<double, 4>;

/// pi/2 - pi - pi/2 Bragg Mach-Zehnder. Arm a takes +v_r at -T and -v_r at 0;
/// arm b takes +v_r at 0 and -v_r at T.
InterferometerSequence build_mach_zehnder(const PhysicalParams& params, Time T,
                                          const Environment& env = {},
                                          const PulsePhases& phases = {});

/// Mach-Zehnder with the last pulse at T + dT. The window is widened to
/// [-(T + |dT|), T + |dT|] so every pulse stays inside it.
InterferometerSequence build_mach_zehnder_offset(const PhysicalParams& params, Time T, Time dT,
                                                 const Environment& env = {},
                                                 const PulsePhases& phases = {});

struct CabOptions {
  double n_b = 0.0;   ///< Bloch oscillations per window
  Time tau_b;         ///< Bloch period
  Time T_r;           ///< lattice ramp time
  bool kick_train = false;
  std::array<double, 4> bloch_phases{};
};

/// Mach-Zehnder with a Bloch lattice on the upper arm of each half. Each
/// window spans T - 4T_r = 2 n_b tau_b, centred on -T/2 (arm a) and T/2 (arm b),
/// accelerating for its first half and decelerating for its second.
/// Throws InconsistentBlochCount unless |n_b - (T - 4T_r)/(2 tau_b)| <= 1e-9 n_b.
InterferometerSequence build_cab(const PhysicalParams& params, Time T, const CabOptions& opts,
                                 const Environment& env = {}, const PulsePhases& phases = {});

/// pi/2 - pi - pi - pi/2 sequence with pulses at -T, -T/2, T/2, T.
InterferometerSequence build_butterfly(const PhysicalParams& params, Time T,
                                       const Environment& env = {},
                                       const PulsePhases& phases = {});

/// Arm a unkicked; arm b at +v_r on (-T, 0) and -v_r on (0, T).
InterferometerSequence build_recoil_triangle(const PhysicalParams& params, Time T,
                                             const Environment& env = {},
                                             const PulsePhases& phases = {});

/// Arm a unkicked; arm b accelerated by +a, -a, +a on [-T,-T/2], [-T/2,T/2], [T/2,T].
InterferometerSequence build_const_accel_recoil(const PhysicalParams& params, Time T,
                                                const Vec3& a, const Environment& env = {});

}  // namespace stalab
