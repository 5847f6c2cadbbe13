#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stalab/params.hpp"
#include "stalab/time.hpp"
#include "stalab/vec.hpp"

namespace stalab {

/// Instantaneous velocity change (delta-function acceleration), e.g. a Bragg pulse.
struct ImpulseKick {
  Time time;
  Vec3 dv = Vec3::Zero();
  double phase = 0.0;  ///< laser phase (rad)
  int recoils = 0;     ///< signed change in photon-recoil count along k
};

/// Uniform acceleration over [start, end], e.g. an optical Bloch lattice.
struct AccelSegment {
  Time start;
  Time end;
  Vec3 accel = Vec3::Zero();
  double phase = 0.0;                   ///< per-cycle lattice phase (rad)
  std::optional<double> bloch_period;   ///< set when laser-driven (s)

  bool laser_driven() const { return bloch_period.has_value(); }
  double duration() const { return (end - start).seconds(); }
};

enum class Arm { A, B };

inline const char* to_string(Arm arm) { return arm == Arm::A ? "a" : "b"; }
inline Arm other(Arm arm) { return arm == Arm::A ? Arm::B : Arm::A; }

/// Events acting on one arm. Kicks are sorted by time with simultaneous kicks
/// merged; segments are sorted and must not overlap (OverlappingSegments).
class ArmTimeline {
 public:
  ArmTimeline(Arm label, Vec3 initial_position, Vec3 initial_velocity,
              std::vector<ImpulseKick> kicks, std::vector<AccelSegment> segments);

  /// Arm at rest at the origin with no events.
  explicit ArmTimeline(Arm label);

  Arm label() const noexcept { return label_; }
  /// x(-T) (m).
  const Vec3& initial_position() const noexcept { return x0_; }
  /// Arm-specific velocity offset at -T, on top of the sequence's common v_i (m/s).
  const Vec3& initial_velocity() const noexcept { return v0_; }
  const std::vector<ImpulseKick>& kicks() const noexcept { return kicks_; }
  const std::vector<AccelSegment>& segments() const noexcept { return segments_; }

  ArmTimeline relabeled(Arm label) const;
  ArmTimeline translated(const Vec3& offset) const;

  /// Earliest and latest event times; nullopt for an empty timeline.
  std::optional<std::pair<Time, Time>> event_span() const;

 private:
  Arm label_;
  Vec3 x0_;
  Vec3 v0_;
  std::vector<ImpulseKick> kicks_;
  std::vector<AccelSegment> segments_;
};

/// Two arms over the window [-T, T] with t = 0 at the interferometer midpoint.
class InterferometerSequence {
 public:
  InterferometerSequence(PhysicalParams params, Time half_duration, ArmTimeline arm_a,
                         ArmTimeline arm_b, Vec3 gravity = Vec3::Zero(),
                         Vec3 rotation = Vec3::Zero(), Vec3 initial_velocity = Vec3::Zero());

  const PhysicalParams& params() const noexcept { return params_; }
  Time half_duration() const noexcept { return half_; }
  double T() const noexcept { return half_.seconds(); }
  Time start() const { return -half_; }
  Time end() const noexcept { return half_; }

  const ArmTimeline& arm(Arm which) const noexcept { return which == Arm::A ? a_ : b_; }
  const ArmTimeline& arm_a() const noexcept { return a_; }
  const ArmTimeline& arm_b() const noexcept { return b_; }

  /// Background (inertial) acceleration g (m/s^2).
  const Vec3& gravity() const noexcept { return g_; }
  /// Frame rotation rate Omega (rad/s).
  const Vec3& rotation() const noexcept { return omega_; }
  /// Common initial velocity v_i at t = -T (m/s).
  const Vec3& initial_velocity() const noexcept { return vi_; }

  InterferometerSequence with_arms_swapped() const;
  InterferometerSequence with_gravity(const Vec3& g) const;
  InterferometerSequence with_rotation(const Vec3& omega) const;
  InterferometerSequence with_initial_velocity(const Vec3& vi) const;

 private:
  PhysicalParams params_;
  Time half_;
  ArmTimeline a_;
  ArmTimeline b_;
  Vec3 g_;
  Vec3 omega_;
  Vec3 vi_;
};

/// Arm a minus arm b at t = T: position and velocity (post-kick) differences.
struct ClosureDefect {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
};

ClosureDefect closure_defect(const InterferometerSequence& seq);

/// True when the closure defect is below `rel_tol` of the largest arm
/// separation (position) and velocity difference reached during the sequence.
bool is_closed(const InterferometerSequence& seq, double rel_tol = 1e-12);

enum class Symmetry {
  VelocitySymmetric,      ///< v_a(t) =  v_b(-t)
  VelocityAntisymmetric,  ///< v_a(t) = -v_b(-t)
  SeparationSymmetric,    ///< dx(t) =  dx(-t)
  SeparationAntisymmetric ///< dx(t) = -dx(-t)
};

const char* to_string(Symmetry s);

/// Symmetries verified on the exact piecewise representation at every
/// breakpoint, mirrored breakpoint and interval midpoint. An empty set means
/// "none". `rel_tol` is relative to the largest magnitude involved.
std::set<Symmetry> symmetry_class(const InterferometerSequence& seq, double rel_tol = 1e-12);

}  // namespace stalab
