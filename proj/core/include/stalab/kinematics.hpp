#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stalab/params.hpp"
#include "stalab/sequence.hpp"
#include "stalab/time.hpp"
#include "stalab/vec.hpp"

namespace stalab {

template <typename V>
V zero_value() {
  if constexpr (std::is_same_v<V, double>) {
    return 0.0;
  } else {
    return V::Zero();
  }
}

/// p(tau) = c0 + c1 tau + c2 tau^2 in the local time tau = t - t_left.
template <typename V>
struct LocalPoly {
  V c0 = zero_value<V>();
  V c1 = zero_value<V>();
  V c2 = zero_value<V>();

  V operator()(double tau) const { return c0 + (c1 + c2 * tau) * tau; }

  /// q(tau) = p(tau + s).
  LocalPoly shifted(double s) const {
    return {c0 + (c1 + c2 * s) * s, c1 + 2.0 * s * c2, c2};
  }
  /// q(tau) = p(h - tau).
  LocalPoly reflected(double h) const {
    return {c0 + (c1 + c2 * h) * h, -(c1 + 2.0 * h * c2), c2};
  }
  LocalPoly derivative() const { return {c1, 2.0 * c2, zero_value<V>()}; }
  /// Integral of p over [0, h].
  V integral(double h) const { return (c0 + (c1 / 2.0 + c2 * (h / 3.0)) * h) * h; }

  friend LocalPoly operator-(const LocalPoly& a, const LocalPoly& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend LocalPoly operator+(const LocalPoly& a, const LocalPoly& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
};

enum class Side { Left, Right };

/// Piecewise polynomial of degree <= 2 over exact breakpoints.
template <typename V>
class Piecewise {
 public:
  Piecewise() = default;
  Piecewise(std::vector<Time> breaks, std::vector<LocalPoly<V>> pieces);

  const std::vector<Time>& breaks() const noexcept { return breaks_; }
  const std::vector<LocalPoly<V>>& pieces() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  bool empty() const noexcept { return pieces_.empty(); }

  Time start() const { return breaks_.front(); }
  Time end() const { return breaks_.back(); }
  double width(std::size_t i) const { return (breaks_[i + 1] - breaks_[i]).seconds(); }

  /// Value at t. At a breakpoint, Left takes the limit from the earlier piece
  /// and Right from the later one; outside the domain the end pieces are used.
  V value(const Time& t, Side side = Side::Right) const;
  V value(double t) const;

  /// Same function re-expressed on `grid`, which must contain every breakpoint.
  Piecewise refined(std::span<const Time> grid) const;

  V integral() const;

  template <typename U>
  friend Piecewise<U> operator-(const Piecewise<U>& a, const Piecewise<U>& b);

 private:
  std::size_t locate(const Time& t, Side side) const;

  std::vector<Time> breaks_;
  std::vector<LocalPoly<V>> pieces_;
};

/// Sorted union of two breakpoint sets.
std::vector<Time> merge_breaks(std::span<const Time> a, std::span<const Time> b);

template <typename V>
Piecewise<V> operator-(const Piecewise<V>& a, const Piecewise<V>& b) {
  const auto grid = merge_breaks(a.breaks(), b.breaks());
  const auto ra = a.refined(grid);
  const auto rb = b.refined(grid);
  std::vector<LocalPoly<V>> diff(ra.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ra.pieces()[i] - rb.pieces()[i];
  return Piecewise<V>(grid, std::move(diff));
}

extern template class Piecewise<double>;
extern template class Piecewise<Vec3>;

/// Exact inertial-frame motion of one arm (g excluded, v_i included).
struct PiecewiseTrajectory {
  Piecewise<Vec3> velocity;   ///< degree <= 1
  Piecewise<Vec3> position;   ///< degree <= 2
  Piecewise<double> recoils;  ///< photon-recoil count along k, degree <= 1
  Vec3 velocity_before_start = Vec3::Zero();  ///< before kicks at -T
  Vec3 velocity_after_end = Vec3::Zero();     ///< after kicks at  T
  double recoils_before_start = 0.0;
  double recoils_after_end = 0.0;

  Vec3 position_at_start() const { return position.pieces().front().c0; }
  Vec3 position_at_end() const { return position.value(position.end(), Side::Left); }
  /// Acceleration on interval i.
  Vec3 acceleration(std::size_t i) const { return velocity.pieces()[i].c1; }
};

/// Exact trajectory: kicks are velocity jumps at their timestamps (a kick at a
/// segment boundary acts after the segment closes), segments integrate
/// analytically. `common_velocity` is the sequence's v_i.
PiecewiseTrajectory integrate_arm(const ArmTimeline& arm, const PhysicalParams& params, Time T,
                                  const Vec3& common_velocity = Vec3::Zero());

/// Arm a minus arm b on the merged breakpoint grid.
struct PathDifference {
  Piecewise<Vec3> velocity;
  Piecewise<Vec3> position;
  Vec3 velocity_before_start = Vec3::Zero();
  Vec3 velocity_after_end = Vec3::Zero();
};

PathDifference path_difference(const InterferometerSequence& seq);
PathDifference path_difference(const PiecewiseTrajectory& a, const PiecewiseTrajectory& b);

/// Weight function for `integrate_polynomial_moment`.
struct Weight {
  enum class Kind { One, Linear, Cos, Sin };
  Kind kind = Kind::One;
  double omega = 0.0;

  static Weight one() { return {Kind::One, 0.0}; }
  static Weight linear() { return {Kind::Linear, 0.0}; }
  static Weight cos(double w) { return {Kind::Cos, w}; }
  static Weight sin(double w) { return {Kind::Sin, w}; }
};

/// Exact integral of weight(t) * p(t) over the domain of p, evaluated per
/// piece from antiderivatives of t^k, t^k cos(wt), t^k sin(wt) (k <= 2).
Vec3 integrate_polynomial_moment(const Piecewise<Vec3>& p, Weight weight);
inline Vec3 integrate_polynomial_moment(const PathDifference& pd, Weight weight) {
  return integrate_polynomial_moment(pd.position, weight);
}

struct TrigMoments {
  Vec3 cos = Vec3::Zero();
  Vec3 sin = Vec3::Zero();
};

/// Both trigonometric moments in one pass.
TrigMoments trig_moments(const Piecewise<Vec3>& p, double omega);

/// J_k = integral_0^h tau^k exp(i w tau) d tau for k = 0, 1, 2 (real and imaginary parts).
struct OscillatoryBasis {
  double re[3];
  double im[3];
};
OscillatoryBasis oscillatory_basis(double omega, double h);

}  // namespace stalab
