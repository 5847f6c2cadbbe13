#include "stalab/generators.hpp"

#include <algorithm>
#include <cmath>

#include "stalab/catalog.hpp"
#include "stalab/oracle.hpp"

namespace stalab {
namespace {

constexpr std::int64_t kLatticeNs = 1000;

struct Draw {
  std::mt19937_64& rng;

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }
  Vec3 direction() {
    std::normal_distribution<double> n;
    Vec3 v(n(rng), n(rng), n(rng));
    return v / v.norm();
  }
  /// Lattice time in [lo, hi] (units of kLatticeNs).
  Time time(std::int64_t lo, std::int64_t hi) { return nanoseconds(integer(lo, hi) * kLatticeNs); }
  int nonzero_recoils(int order) {
    const int r = static_cast<int>(integer(1, 2 * order));
    return integer(0, 1) ? r : -r;
  }
};

struct Setup {
  PhysicalParams params;
  Time T;
  std::int64_t half;  // T in lattice units
};

Setup draw_setup(Draw& d) {
  const int n = static_cast<int>(d.integer(1, 5));
  const std::int64_t half = d.integer(1000, 200000);
  return {PhysicalParams::rubidium87(n), nanoseconds(half * kLatticeNs), half};
}

std::vector<ImpulseKick> draw_kicks(Draw& d, const Setup& s, int count) {
  std::vector<ImpulseKick> kicks;
  const Vec3 k = s.params.k_hat();
  const double unit = s.params.photon_recoil_speed();
  for (int i = 0; i < count; ++i) {
    const int r = d.nonzero_recoils(s.params.order());
    kicks.push_back({d.time(-s.half, s.half), r * unit * k, d.uniform(-M_PI, M_PI), r});
  }
  return kicks;
}

std::vector<AccelSegment> draw_segments(Draw& d, const Setup& s, int count, std::int64_t lo,
                                        std::int64_t hi) {
  std::vector<std::int64_t> ends;
  for (int i = 0; i < 2 * count; ++i) ends.push_back(d.integer(lo, hi));
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::vector<AccelSegment> segs;
  const Vec3 k = s.params.k_hat();
  const double typical = 4.0 * s.params.photon_recoil_speed() / s.T.seconds();
  for (std::size_t i = 0; i + 1 < ends.size(); i += 2) {
    const double a = d.uniform(-typical, typical);
    AccelSegment seg{nanoseconds(ends[i] * kLatticeNs), nanoseconds(ends[i + 1] * kLatticeNs),
                     a * k, d.uniform(-M_PI, M_PI), std::nullopt};
    if (d.integer(0, 1) && a != 0.0) seg.bloch_period = 2.0 * s.params.photon_recoil_speed() / std::abs(a);
    segs.push_back(seg);
  }
  return segs;
}

Environment draw_environment(Draw& d, bool gravity, bool velocity) {
  Environment env;
  if (gravity) env.gravity = d.uniform(0.0, 10.0) * d.direction();
  if (velocity) env.initial_velocity = d.uniform(0.0, 1.0) * d.direction();
  return env;
}

}  // namespace

InterferometerSequence random_closed_sequence(std::mt19937_64& rng,
                                              const RandomSequenceOptions& opts) {
  Draw d{rng};
  const Setup s = draw_setup(d);
  const auto env = draw_environment(d, opts.random_gravity, opts.random_initial_velocity);

  std::vector<ImpulseKick> ka = draw_kicks(d, s, static_cast<int>(d.integer(1, opts.max_kicks_per_arm)));
  std::vector<ImpulseKick> kb = draw_kicks(d, s, static_cast<int>(d.integer(0, opts.max_kicks_per_arm)));
  auto sa = draw_segments(d, s, static_cast<int>(d.integer(0, opts.max_segments_per_arm)), -s.half, s.half);
  auto sb = draw_segments(d, s, static_cast<int>(d.integer(0, opts.max_segments_per_arm)), -s.half, s.half);

  const InterferometerSequence open(s.params, s.T,
                                    ArmTimeline(Arm::A, Vec3::Zero(), Vec3::Zero(), ka, sa),
                                    ArmTimeline(Arm::B, Vec3::Zero(), Vec3::Zero(), kb, sb),
                                    env.gravity, env.rotation, env.initial_velocity);
  const EventPath pa(open.arm_a(), open), pb(open.arm_b(), open);
  const double T = s.T.seconds();
  const Vec3 dx = pa.position(T) - pb.position(T);
  const Vec3 dv = pa.velocity(T, true) - pb.velocity(T, true);

  // two closing kicks on arm b, away from every existing kick time
  const auto taken = [&](const Time& t) {
    return std::any_of(kb.begin(), kb.end(), [&t](const ImpulseKick& k) { return k.time == t; });
  };
  Time t1, t2;
  do t1 = d.time(-s.half, 0); while (taken(t1));
  do t2 = d.time(s.half / 2, s.half); while (taken(t2));
  const double d1 = T - t1.seconds(), d2 = T - t2.seconds();
  const Vec3 u1 = (dx - dv * d2) / (d1 - d2);
  kb.push_back({t1, u1, 0.0, 0});
  kb.push_back({t2, dv - u1, 0.0, 0});
  return InterferometerSequence(s.params, s.T,
                                ArmTimeline(Arm::A, Vec3::Zero(), Vec3::Zero(), ka, sa),
                                ArmTimeline(Arm::B, Vec3::Zero(), Vec3::Zero(), kb, sb),
                                env.gravity, env.rotation, env.initial_velocity);
}

InterferometerSequence random_mirrored_sequence(std::mt19937_64& rng, bool antisymmetric) {
  Draw d{rng};
  const Setup s = draw_setup(d);
  const auto env = draw_environment(d, true, !antisymmetric);
  const double flip = antisymmetric ? 1.0 : -1.0;

  auto ka = draw_kicks(d, s, static_cast<int>(d.integer(1, 5)));
  const auto sa = draw_segments(d, s, static_cast<int>(d.integer(0, 2)), -s.half, s.half);
  Vec3 gain = Vec3::Zero();
  for (const auto& k : ka) gain += k.dv;
  for (const auto& g : sa) gain += g.accel * g.duration();
  // a kick at t = 0 is its own mirror image, so it closes both arms
  ka.push_back({Time{}, -gain, 0.0, 0});
  std::vector<ImpulseKick> kb;
  std::vector<AccelSegment> sb;
  for (const auto& k : ka) kb.push_back({-k.time, flip * k.dv, k.phase, static_cast<int>(flip) * k.recoils});
  for (const auto& g : sa) sb.push_back({-g.end, -g.start, flip * g.accel, g.phase, g.bloch_period});
  return InterferometerSequence(s.params, s.T,
                                ArmTimeline(Arm::A, Vec3::Zero(), Vec3::Zero(), ka, sa),
                                ArmTimeline(Arm::B, Vec3::Zero(), Vec3::Zero(), kb, sb),
                                env.gravity, env.rotation, env.initial_velocity);
}

InterferometerSequence random_separation_symmetric_sequence(std::mt19937_64& rng,
                                                            bool antisymmetric) {
  Draw d{rng};
  const Setup s = draw_setup(d);
  const auto env = draw_environment(d, true, true);
  const Vec3 k = s.params.k_hat();
  const double unit = s.params.photon_recoil_speed();
  // Δv odd (symmetric Δx): mirrored jumps equal; Δv even (antisymmetric Δx): opposite
  const double mirror = antisymmetric ? -1.0 : 1.0;

  std::vector<ImpulseKick> ka;
  Vec3 before_zero = Vec3::Zero();
  const double v0 = d.uniform(-4.0, 4.0) * unit;
  ka.push_back({-s.T, v0 * k, 0.0, 0});
  ka.push_back({s.T, mirror * v0 * k, 0.0, 0});
  before_zero += v0 * k;
  const int pairs = static_cast<int>(d.integer(1, 3));
  for (int i = 0; i < pairs; ++i) {
    const Time t = d.time(1, s.half - 1);
    const Vec3 j = d.uniform(-4.0, 4.0) * unit * k;
    ka.push_back({-t, j, 0.0, 0});
    ka.push_back({t, mirror * j, 0.0, 0});
    before_zero += j;
  }
  std::vector<AccelSegment> sa;
  for (const auto& seg : draw_segments(d, s, static_cast<int>(d.integer(0, 2)), 1, s.half - 1)) {
    sa.push_back({-seg.end, -seg.start, seg.accel, 0.0, std::nullopt});
    sa.push_back({seg.start, seg.end, mirror * seg.accel, 0.0, std::nullopt});
    before_zero += seg.accel * seg.duration();
  }
  if (!antisymmetric) ka.push_back({Time{}, -2.0 * before_zero, 0.0, 0});

  Vec3 x0 = Vec3::Zero();
  if (antisymmetric) {
    const InterferometerSequence probe(s.params, s.T,
                                       ArmTimeline(Arm::A, Vec3::Zero(), Vec3::Zero(), ka, sa),
                                       ArmTimeline(Arm::B), Vec3::Zero(), Vec3::Zero(), Vec3::Zero());
    x0 = -EventPath(probe.arm_a(), probe).position(0.0);
  }
  return InterferometerSequence(s.params, s.T, ArmTimeline(Arm::A, x0, Vec3::Zero(), ka, sa),
                                ArmTimeline(Arm::B), env.gravity, env.rotation,
                                env.initial_velocity);
}

}  // namespace stalab
