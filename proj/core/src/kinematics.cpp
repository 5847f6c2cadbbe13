#include "stalab/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stalab/errors.hpp"

namespace stalab {

template <typename V>
Piecewise<V>::Piecewise(std::vector<Time> breaks, std::vector<LocalPoly<V>> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (breaks_.size() != pieces_.size() + 1 || pieces_.empty())
    throw InvalidArgument("piecewise polynomial needs n pieces and n+1 breakpoints");
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i - 1] < breaks_[i])) throw InvalidArgument("breakpoints must increase strictly");
  }
}

template <typename V>
std::size_t Piecewise<V>::locate(const Time& t, Side side) const {
  if (t <= breaks_.front()) return 0;
  if (t >= breaks_.back()) return pieces_.size() - 1;
  // first break strictly greater than t
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  if (side == Side::Left && breaks_[i] == t && i > 0) --i;
  return i;
}

template <typename V>
V Piecewise<V>::value(const Time& t, Side side) const {
  const std::size_t i = locate(t, side);
  return pieces_[i]((t - breaks_[i]).seconds());
}

template <typename V>
V Piecewise<V>::value(double t) const {
  std::size_t lo = 0, hi = pieces_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (breaks_[mid].seconds() <= t) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return pieces_[lo](t - breaks_[lo].seconds());
}

template <typename V>
Piecewise<V> Piecewise<V>::refined(std::span<const Time> grid) const {
  if (grid.size() < 2 || grid.front() != breaks_.front() || grid.back() != breaks_.back())
    throw InvalidArgument("refinement grid must span the same domain");
  std::vector<LocalPoly<V>> out;
  out.reserve(grid.size() - 1);
  std::size_t i = 0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    while (i + 1 < pieces_.size() && breaks_[i + 1] <= grid[j]) ++i;
    if (grid[j + 1] > breaks_[i + 1])
      throw InvalidArgument("refinement grid is missing a breakpoint");
    out.push_back(pieces_[i].shifted((grid[j] - breaks_[i]).seconds()));
  }
  return Piecewise(std::vector<Time>(grid.begin(), grid.end()), std::move(out));
}

template <typename V>
V Piecewise<V>::integral() const {
  V sum = zero_value<V>();
  for (std::size_t i = 0; i < pieces_.size(); ++i) sum += pieces_[i].integral(width(i));
  return sum;
}

template class Piecewise<double>;
template class Piecewise<Vec3>;

std::vector<Time> merge_breaks(std::span<const Time> a, std::span<const Time> b) {
  std::vector<Time> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PiecewiseTrajectory integrate_arm(const ArmTimeline& arm, const PhysicalParams& params, Time T,
                                  const Vec3& common_velocity) {
  const Time lo = -T;
  const Time hi = T;
  if (!(lo < hi)) throw InvalidArgument("half-duration must be positive");

  std::vector<Time> grid{lo, hi};
  for (const auto& k : arm.kicks()) grid.push_back(k.time);
  for (const auto& s : arm.segments()) {
    grid.push_back(s.start);
    grid.push_back(s.end);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < lo || grid.back() > hi)
    throw InvalidArgument("arm events lie outside [-T, T]");

  const Vec3 k_hat = params.k_hat();
  const double recoil_speed = params.photon_recoil_speed();

  PiecewiseTrajectory out;
  Vec3 v = common_velocity + arm.initial_velocity();
  Vec3 x = arm.initial_position();
  double n = arm.initial_velocity().dot(k_hat) / recoil_speed;
  out.velocity_before_start = v;
  out.recoils_before_start = n;

  std::vector<LocalPoly<Vec3>> vel, pos;
  std::vector<LocalPoly<double>> rec;
  auto kick = arm.kicks().begin();
  auto seg = arm.segments().begin();
  const auto apply_kicks = [&](const Time& t) {
    while (kick != arm.kicks().end() && kick->time == t) {
      v += kick->dv;
      n += kick->recoils;
      ++kick;
    }
  };

  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    apply_kicks(grid[j]);
    while (seg != arm.segments().end() && seg->end <= grid[j]) ++seg;
    Vec3 a = Vec3::Zero();
    double rate = 0.0;
    if (seg != arm.segments().end() && seg->start <= grid[j]) {
      a = seg->accel;
      if (seg->laser_driven()) rate = a.dot(k_hat) / recoil_speed;
    }
    const double h = (grid[j + 1] - grid[j]).seconds();
    vel.push_back({v, a, Vec3::Zero()});
    pos.push_back({x, v, 0.5 * a});
    rec.push_back({n, rate, 0.0});
    x = pos.back()(h);
    v = vel.back()(h);
    n = rec.back()(h);
  }
  apply_kicks(hi);
  out.velocity_after_end = v;
  out.recoils_after_end = n;

  out.velocity = Piecewise<Vec3>(grid, std::move(vel));
  out.position = Piecewise<Vec3>(grid, std::move(pos));
  out.recoils = Piecewise<double>(std::move(grid), std::move(rec));
  return out;
}

PathDifference path_difference(const PiecewiseTrajectory& a, const PiecewiseTrajectory& b) {
  PathDifference pd;
  pd.velocity = a.velocity - b.velocity;
  pd.position = a.position - b.position;
  pd.velocity_before_start = a.velocity_before_start - b.velocity_before_start;
  pd.velocity_after_end = a.velocity_after_end - b.velocity_after_end;
  return pd;
}

PathDifference path_difference(const InterferometerSequence& seq) {
  const auto ta = integrate_arm(seq.arm_a(), seq.params(), seq.half_duration(), seq.initial_velocity());
  const auto tb = integrate_arm(seq.arm_b(), seq.params(), seq.half_duration(), seq.initial_velocity());
  return path_difference(ta, tb);
}

}  // namespace stalab
