#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stalab/sequence.hpp"
#include "stalab/vec.hpp"

namespace stalab {

// Brute-force validators. Nothing here calls the closed-form evaluators of the
// kinematics, phase or response modules; arm motion is rebuilt from the raw
// event lists.

struct OracleConfig {
  int points_per_interval = 4096;  ///< Simpson subintervals; checked against twice as many
  double rel_tol = 1e-11;
  double abs_tol = 1e-12;          ///< relative to the scale of the integrand
  std::uint64_t seed = 20240611;
};

/// Inertial-frame motion of one arm evaluated by summing every event's effect.
class EventPath {
 public:
  EventPath(const ArmTimeline& arm, const InterferometerSequence& seq);

  /// x̃(t), continuous.
  Vec3 position(double t) const;
  /// ṽ(t); at a kick time `after` selects the post-kick value.
  Vec3 velocity(double t, bool after) const;
  /// Uniform acceleration acting on the open interval (lo, hi).
  Vec3 acceleration(double lo, double hi) const;

  struct Kick {
    double t;
    Vec3 dv;
  };
  struct Segment {
    double start, end;
    Vec3 a;
  };
  const std::vector<Kick>& kicks() const noexcept { return kicks_; }
  const std::vector<Segment>& segments() const noexcept { return segs_; }
  double start() const noexcept { return t0_; }

 private:
  double t0_;
  Vec3 x0_;
  Vec3 v0_;
  std::vector<Kick> kicks_;
  std::vector<Segment> segs_;
};

/// Sorted, de-duplicated event times of both arms plus ±T.
std::vector<double> oracle_grid(const InterferometerSequence& seq);

/// (S_a - S_b)/hbar of the lab-frame Lagrangian m(v²/2 + g(t)·x), with each
/// kick contributing m Δv·x(t_k) and each segment m a·x. The free-fall part is
/// integrated by RK4 from rest at -T; the action by composite Simpson.
double action_phase(const InterferometerSequence& seq, const std::function<Vec3(double)>& g,
                    const OracleConfig& cfg = {});
/// Constant g from the sequence.
double action_phase(const InterferometerSequence& seq, const OracleConfig& cfg = {});

struct QuadratureTransfer {
  Vec3 cos = Vec3::Zero();
  Vec3 sin = Vec3::Zero();
};

/// ∫cos(ωt)Δx̃ dt and ∫sin(ωt)Δx̃ dt by adaptive Simpson, at least 20 nodes per period.
QuadratureTransfer quadrature_transfer(const InterferometerSequence& seq, double omega,
                                       const OracleConfig& cfg = {});

/// ∫ g(t)·Δx̃ dt by adaptive Simpson, split at the event grid and `breakpoints`.
double quadrature_inertial(const InterferometerSequence& seq, const std::function<Vec3(double)>& g,
                           const std::vector<double>& breakpoints = {}, const OracleConfig& cfg = {});

/// ∫Δx̃ dt summed event by event: a kick Δv at t_k adds Δv(T - t_k)²/2, a
/// segment adds a[(T - t_s)³ - (T - t_e)³]/6.
Vec3 event_area(const InterferometerSequence& seq);

struct KicktrainReport {
  Vec3 area_continuous = Vec3::Zero();
  Vec3 area_kicktrain = Vec3::Zero();
  double area_rel_diff = 0.0;
  double phase_continuous = 0.0;
  double phase_kicktrain = 0.0;
  double phase_diff = 0.0;
  bool area_equal = false;  ///< rel diff <= 1e-12
};

KicktrainReport kicktrain_equivalence(const InterferometerSequence& continuous,
                                      const InterferometerSequence& kicktrain,
                                      const OracleConfig& cfg = {});

/// (m/hbar) ∫ Ω·(r_a × v_a - r_b × v_b) dt along the unperturbed lab paths.
double sagnac_oracle(const InterferometerSequence& seq, const Vec3& omega,
                     const OracleConfig& cfg = {});

/// One comparison between a closed form and an oracle.
struct OracleReport {
  std::string case_id;
  double analytic = 0.0;
  double oracle = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool pass = false;
};

/// Fills the error fields; passes when abs_err <= max(rel_tol |oracle|, abs_floor).
OracleReport compare(std::string case_id, double analytic, double oracle, double rel_tol,
                     double abs_floor = 0.0);

/// `key=value` block, one field per line, terminated by a blank line.
std::string to_kv(const OracleReport& r);

}  // namespace stalab
