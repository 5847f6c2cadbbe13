#include <cmath>

#include "stalab/kinematics.hpp"

namespace stalab {

OscillatoryBasis oscillatory_basis(double omega, double h) {
  OscillatoryBasis J{};
  const double z = omega * h;
  if (std::abs(z) <= 1.0) {
    // h^{k+1} sum_j (iz)^j / (j! (j+k+1))
    for (int k = 0; k < 3; ++k) {
      double re = 0.0, im = 0.0;
      double term = 1.0;  // z^j / j!
      for (int j = 0; j < 40; ++j) {
        const double c = term / (j + k + 1);
        switch (j % 4) {
          case 0: re += c; break;
          case 1: im += c; break;
          case 2: re -= c; break;
          case 3: im -= c; break;
        }
        term *= z / (j + 1);
        if (std::abs(term) < 1e-18) break;
      }
      const double scale = std::pow(h, k + 1);
      J.re[k] = re * scale;
      J.im[k] = im * scale;
    }
    return J;
  }
  const double c = std::cos(z);
  const double s = std::sin(z);
  // J_0 = (e^{iz} - 1) / (i w)
  J.re[0] = s / omega;
  J.im[0] = (1.0 - c) / omega;
  double hk = 1.0;
  for (int k = 1; k < 3; ++k) {
    hk *= h;
    // J_k = (h^k e^{iz} - k J_{k-1}) / (i w);  (a + ib)/i = b - ia
    const double a = hk * c - k * J.re[k - 1];
    const double b = hk * s - k * J.im[k - 1];
    J.re[k] = b / omega;
    J.im[k] = -a / omega;
  }
  return J;
}

TrigMoments trig_moments(const Piecewise<Vec3>& p, double omega) {
  TrigMoments out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& q = p.pieces()[i];
    const double h = p.width(i);
    const auto J = oscillatory_basis(omega, h);
    const Vec3 re = q.c0 * J.re[0] + q.c1 * J.re[1] + q.c2 * J.re[2];
    const Vec3 im = q.c0 * J.im[0] + q.c1 * J.im[1] + q.c2 * J.im[2];
    const double phase = omega * p.breaks()[i].seconds();
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    out.cos += c * re - s * im;
    out.sin += s * re + c * im;
  }
  return out;
}

Vec3 integrate_polynomial_moment(const Piecewise<Vec3>& p, Weight weight) {
  switch (weight.kind) {
    case Weight::Kind::One:
      return p.integral();
    case Weight::Kind::Linear: {
      Vec3 sum = Vec3::Zero();
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& q = p.pieces()[i];
        const double h = p.width(i);
        const double tl = p.breaks()[i].seconds();
        const Vec3 m1 = (q.c0 / 2.0 + (q.c1 / 3.0 + q.c2 * (h / 4.0)) * h) * h * h;
        sum += tl * q.integral(h) + m1;
      }
      return sum;
    }
    case Weight::Kind::Cos:
      return trig_moments(p, weight.omega).cos;
    case Weight::Kind::Sin:
      return trig_moments(p, weight.omega).sin;
  }
  return Vec3::Zero();
}

}  // namespace stalab
