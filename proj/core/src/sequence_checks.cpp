#include <algorithm>
#include <vector>

#include "stalab/kinematics.hpp"
#include "stalab/sequence.hpp"

namespace stalab {
namespace {

struct Arms {
  PiecewiseTrajectory a;
  PiecewiseTrajectory b;
};

Arms integrate_both(const InterferometerSequence& seq) {
  return {integrate_arm(seq.arm_a(), seq.params(), seq.half_duration(), seq.initial_velocity()),
          integrate_arm(seq.arm_b(), seq.params(), seq.half_duration(), seq.initial_velocity())};
}

Vec3 velocity_limit(const PiecewiseTrajectory& tr, const Time& t, Side side) {
  if (side == Side::Left && t == tr.velocity.start()) return tr.velocity_before_start;
  if (side == Side::Right && t == tr.velocity.end()) return tr.velocity_after_end;
  return tr.velocity.value(t, side);
}

Side mirror(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

// Breakpoints of both arms and their mirror images, plus interval midpoints.
std::vector<Time> mirrored_samples(const Arms& arms) {
  std::vector<Time> g = merge_breaks(arms.a.velocity.breaks(), arms.b.velocity.breaks());
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) g.push_back(-g[i]);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  const std::size_t m = g.size();
  for (std::size_t i = 0; i + 1 < m; ++i) g.push_back((g[i] + g[i + 1]) / 2);
  std::sort(g.begin(), g.end());
  return g;
}

bool all_close(const std::vector<std::pair<Vec3, Vec3>>& pairs, double rel_tol) {
  double scale = 0.0;
  for (const auto& [l, r] : pairs) scale = std::max({scale, l.norm(), r.norm()});
  for (const auto& [l, r] : pairs) {
    if ((l - r).norm() > rel_tol * scale) return false;
  }
  return true;
}

}  // namespace

ClosureDefect closure_defect(const InterferometerSequence& seq) {
  const auto arms = integrate_both(seq);
  return {arms.a.position_at_end() - arms.b.position_at_end(),
          arms.a.velocity_after_end - arms.b.velocity_after_end};
}

bool is_closed(const InterferometerSequence& seq, double rel_tol) {
  const auto arms = integrate_both(seq);
  const auto pd = path_difference(arms.a, arms.b);
  double sx = 0.0, sv = std::max(pd.velocity_before_start.norm(), pd.velocity_after_end.norm());
  for (const auto& t : mirrored_samples(arms)) {
    sx = std::max(sx, pd.position.value(t).norm());
    sv = std::max(sv, pd.velocity.value(t, Side::Left).norm());
    sv = std::max(sv, pd.velocity.value(t, Side::Right).norm());
  }
  const Vec3 dx = arms.a.position_at_end() - arms.b.position_at_end();
  const Vec3 dv = arms.a.velocity_after_end - arms.b.velocity_after_end;
  return dx.norm() <= rel_tol * sx && dv.norm() <= rel_tol * sv;
}

std::set<Symmetry> symmetry_class(const InterferometerSequence& seq, double rel_tol) {
  const auto arms = integrate_both(seq);
  const auto pd = path_difference(arms.a, arms.b);
  const auto samples = mirrored_samples(arms);

  std::vector<std::pair<Vec3, Vec3>> v_sym, v_anti, x_sym, x_anti;
  for (const auto& t : samples) {
    for (Side s : {Side::Left, Side::Right}) {
      const Vec3 va = velocity_limit(arms.a, t, s);
      const Vec3 vb = velocity_limit(arms.b, -t, mirror(s));
      v_sym.emplace_back(va, vb);
      v_anti.emplace_back(va, -vb);
    }
    const Vec3 x = pd.position.value(t);
    const Vec3 xm = pd.position.value(-t);
    x_sym.emplace_back(x, xm);
    x_anti.emplace_back(x, -xm);
  }

  std::set<Symmetry> out;
  if (all_close(v_sym, rel_tol)) out.insert(Symmetry::VelocitySymmetric);
  if (all_close(v_anti, rel_tol)) out.insert(Symmetry::VelocityAntisymmetric);
  if (all_close(x_sym, rel_tol)) out.insert(Symmetry::SeparationSymmetric);
  if (all_close(x_anti, rel_tol)) out.insert(Symmetry::SeparationAntisymmetric);
  return out;
}

}  // namespace stalab
