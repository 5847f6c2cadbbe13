#include "stalab/response.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "stalab/errors.hpp"
#include "stalab/parallel.hpp"
#include "stalab/phase.hpp"
#include "stalab/quadrature.hpp"

namespace stalab {
namespace {

// ∫_0^h |c0 + c1 τ + c2 τ²| dτ, split at the real roots inside (0, h).
double abs_quadratic_integral(double c0, double c1, double c2, double h) {
  std::vector<double> cuts{0.0, h};
  const auto keep = [&](double r) {
    if (r > 0.0 && r < h) cuts.push_back(r);
  };
  if (c2 == 0.0) {
    if (c1 != 0.0) keep(-c0 / c1);
  } else {
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc > 0.0) {
      const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
      keep(q / c2);
      if (q != 0.0) keep(c0 / q);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const auto prim = [&](double t) { return ((c2 / 3.0 * t + c1 / 2.0) * t + c0) * t; };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += std::abs(prim(cuts[i + 1]) - prim(cuts[i]));
  return sum;
}

double abs_area_of(const Piecewise<Vec3>& dx, const Vec3& k_hat, bool collinear) {
  double sum = 0.0;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    const auto& p = dx.pieces()[i];
    const double h = dx.width(i);
    if (collinear) {
      sum += abs_quadratic_integral(p.c0.dot(k_hat), p.c1.dot(k_hat), p.c2.dot(k_hat), h);
    } else {
      const double scale = std::max({p.c0.norm(), p(h / 2).norm(), p(h).norm()}) * h;
      if (scale == 0.0) continue;
      sum += adaptive_simpson<double>([&p](double t) { return p(t).norm(); }, 0.0, h, 1e-14 * scale);
    }
  }
  return sum;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TransferEvaluator::TransferEvaluator(const InterferometerSequence& seq)
    : dx_(path_difference(seq).position),
      k_hat_(seq.params().k_hat()),
      collinear_(is_collinear(seq)),
      area_(dx_.integral()),
      abs_area_(abs_area_of(dx_, k_hat_, collinear_)) {}

Transfer TransferEvaluator::at(double omega) const {
  if (!(omega >= 0.0)) throw InvalidArgument("omega must be non-negative");
  const auto m = trig_moments(dx_, omega);
  return {m.cos, m.sin};
}

double TransferEvaluator::measure(const Vec3& v) const {
  return collinear_ ? std::abs(v.dot(k_hat_)) : v.norm();
}

bool TransferEvaluator::has_area() const {
  return abs_area_ > 0.0 && measure(area_) > 1e-12 * abs_area_;
}

double TransferEvaluator::R(double omega) const {
  if (!has_area())
    throw ZeroArea("space-time area vanishes; use the antisymmetric sensitivity R*");
  return measure(at(omega).cos) / measure(area_);
}

double TransferEvaluator::Rstar(double omega) const {
  if (!(abs_area_ > 0.0)) throw DegenerateSequence("arms never separate");
  return measure(at(omega).sin) / abs_area_;
}

Transfer transfer(const InterferometerSequence& seq, double omega) {
  return TransferEvaluator(seq).at(omega);
}

double sensitivity_R(const InterferometerSequence& seq, double omega) {
  return TransferEvaluator(seq).R(omega);
}

double sensitivity_Rstar(const InterferometerSequence& seq, double omega) {
  return TransferEvaluator(seq).Rstar(omega);
}

double abs_area(const InterferometerSequence& seq) { return TransferEvaluator(seq).abs_area(); }

TransferFunctions response_curve(const InterferometerSequence& seq, double omega_min,
                                 double omega_max, int points, GridScale scale) {
  if (!(omega_min >= 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max))
    throw InvalidArgument("response grid needs 0 <= omega_min < omega_max");
  if (points < 2) throw InvalidArgument("response grid needs at least 2 points");
  if (scale == GridScale::Log && !(omega_min > 0.0))
    throw InvalidArgument("log grid needs omega_min > 0");

  const TransferEvaluator ev(seq);
  TransferFunctions tf;
  tf.area = ev.area();
  tf.abs_area = ev.abs_area();
  const auto n = static_cast<std::size_t>(points);
  tf.omega.resize(n);
  tf.cos.resize(n);
  tf.sin.resize(n);
  tf.R.resize(n);
  tf.Rstar.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    tf.omega[i] = scale == GridScale::Linear
                      ? omega_min + (omega_max - omega_min) * f
                      : omega_min * std::pow(omega_max / omega_min, f);
  }
  tf.omega.back() = omega_max;

  const bool has_area = ev.has_area();
  const bool separates = ev.abs_area() > 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  parallel_for(n, [&](std::size_t i) {
    const auto t = ev.at(tf.omega[i]);
    tf.cos[i] = t.cos;
    tf.sin[i] = t.sin;
    tf.R[i] = has_area ? ev.measure(t.cos) / ev.measure(tf.area) : nan;
    tf.Rstar[i] = separates ? ev.measure(t.sin) / tf.abs_area : nan;
  });
  return tf;
}

std::string to_csv(const TransferFunctions& tf) {
  std::ostringstream os;
  os << "omega,Ac_x,Ac_y,Ac_z,As_x,As_y,As_z,R,Rstar\n";
  for (std::size_t i = 0; i < tf.omega.size(); ++i) {
    os << fmt(tf.omega[i]);
    for (int c = 0; c < 3; ++c) os << ',' << fmt(tf.cos[i][c]);
    for (int c = 0; c < 3; ++c) os << ',' << fmt(tf.sin[i][c]);
    os << ',' << fmt(tf.R[i]) << ',' << fmt(tf.Rstar[i]) << '\n';
  }
  return os.str();
}

}  // namespace stalab
