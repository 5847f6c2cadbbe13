#include "stalab/catalog.hpp"

#include <cmath>
#include <string>

#include "stalab/errors.hpp"

namespace stalab {
namespace {

void require_positive(Time T) {
  if (!(T > Time{})) throw InvalidArgument("T must be positive");
}

InterferometerSequence assemble(const PhysicalParams& params, Time half, std::vector<ImpulseKick> ka,
                                std::vector<AccelSegment> sa, std::vector<ImpulseKick> kb,
                                std::vector<AccelSegment> sb, const Environment& env) {
  return InterferometerSequence(
      params, half,
      ArmTimeline(Arm::A, Vec3::Zero(), Vec3::Zero(), std::move(ka), std::move(sa)),
      ArmTimeline(Arm::B, Vec3::Zero(), Vec3::Zero(), std::move(kb), std::move(sb)),
      env.gravity, env.rotation, env.initial_velocity);
}

}  // namespace

InterferometerSequence build_mach_zehnder(const PhysicalParams& params, Time T,
                                          const Environment& env, const PulsePhases& phases) {
  return build_mach_zehnder_offset(params, T, Time{}, env, phases);
}

InterferometerSequence build_mach_zehnder_offset(const PhysicalParams& params, Time T, Time dT,
                                                 const Environment& env,
                                                 const PulsePhases& phases) {
  require_positive(T);
  if (!(T + dT > Time{})) throw InvalidArgument("last pulse must come after the mirror pulse");
  const Vec3 v = params.recoil_velocity();
  const int r = 2 * params.order();
  const Time half = T + (dT < Time{} ? -dT : dT);
  return assemble(params, half,
                  {{-T, v, phases[0], r}, {Time{}, -v, phases[1], -r}}, {},
                  {{Time{}, v, phases[1], r}, {T + dT, -v, phases[2], -r}}, {}, env);
}

InterferometerSequence build_cab(const PhysicalParams& params, Time T, const CabOptions& opts,
                                 const Environment& env, const PulsePhases& phases) {
  require_positive(T);
  if (opts.T_r < Time{}) throw InvalidArgument("T_r must be non-negative");
  const Time window = T - opts.T_r * 4;
  if (!(window > Time{})) throw InvalidArgument("CAB needs T - 4T_r > 0");
  if (!(opts.n_b >= 0.0) || !std::isfinite(opts.n_b))
    throw InvalidArgument("n_b must be non-negative");

  auto seq = build_mach_zehnder(params, T, env, phases);
  if (opts.n_b == 0.0) return seq;

  if (!(opts.tau_b > Time{})) throw InvalidArgument("tau_b must be positive");
  const double implied = window.seconds() / (2.0 * opts.tau_b.seconds());
  if (std::abs(opts.n_b - implied) > 1e-9 * opts.n_b)
    throw InconsistentBlochCount("n_b = " + std::to_string(opts.n_b) + " but (T - 4T_r)/(2 tau_b) = " +
                                 std::to_string(implied));

  const double tau = opts.tau_b.seconds();
  const Vec3 kick = (2.0 * params.hbar() / params.mass()) * params.k();
  const Vec3 accel = kick / tau;
  const auto& ph = opts.bloch_phases;

  // (start, end, sign, phase) per arm
  struct Window {
    Time start, end;
    double sign;
    double phase;
  };
  const Time q = T / 2;
  const Window wa[2] = {{-T + opts.T_r * 2, -q, 1.0, ph[0]}, {-q, -(opts.T_r * 2), -1.0, ph[1]}};
  const Window wb[2] = {{opts.T_r * 2, q, 1.0, ph[2]}, {q, T - opts.T_r * 2, -1.0, ph[3]}};

  std::vector<ImpulseKick> ka = seq.arm_a().kicks();
  std::vector<ImpulseKick> kb = seq.arm_b().kicks();
  std::vector<AccelSegment> sa, sb;
  const auto emit = [&](const Window& w, std::vector<ImpulseKick>& kicks,
                        std::vector<AccelSegment>& segs) {
    if (!opts.kick_train) {
      segs.push_back({w.start, w.end, w.sign * accel, w.phase, tau});
      return;
    }
    const int r = w.sign > 0 ? 2 : -2;
    for (std::int64_t i = 1;; ++i) {
      const Time t = w.start + opts.tau_b * (2 * i - 1) / 2;
      if (!(t < w.end)) break;
      kicks.push_back({t, w.sign * kick, w.phase, r});
    }
  };
  for (const auto& w : wa) emit(w, ka, sa);
  for (const auto& w : wb) emit(w, kb, sb);
  return assemble(params, T, std::move(ka), std::move(sa), std::move(kb), std::move(sb), env);
}

InterferometerSequence build_butterfly(const PhysicalParams& params, Time T,
                                       const Environment& env, const PulsePhases& phases) {
  require_positive(T);
  const Vec3 v = params.recoil_velocity();
  const int r = 2 * params.order();
  const Time q = T / 2;
  return assemble(params, T,
                  {{-T, v, phases[0], r}, {-q, -v, phases[1], -r}, {q, v, phases[2], r}}, {},
                  {{-q, v, phases[1], r}, {q, -v, phases[2], -r}, {T, v, phases[3], r}}, {}, env);
}

InterferometerSequence build_recoil_triangle(const PhysicalParams& params, Time T,
                                             const Environment& env, const PulsePhases& phases) {
  require_positive(T);
  const Vec3 v = params.recoil_velocity();
  const int r = 2 * params.order();
  return assemble(params, T, {}, {},
                  {{-T, v, phases[0], r}, {Time{}, -2.0 * v, phases[1], -2 * r}, {T, v, phases[2], r}},
                  {}, env);
}

InterferometerSequence build_const_accel_recoil(const PhysicalParams& params, Time T,
                                                const Vec3& a, const Environment& env) {
  require_positive(T);
  if (!a.allFinite()) throw InvalidArgument("acceleration must be finite");
  if (a.isZero(0.0)) return assemble(params, T, {}, {}, {}, {}, env);
  const Time q = T / 2;
  return assemble(params, T, {}, {}, {},
                  {{-T, -q, a, 0.0, std::nullopt},
                   {-q, q, -a, 0.0, std::nullopt},
                   {q, T, a, 0.0, std::nullopt}},
                  env);
}

}  // namespace stalab
