#include <cmath>
#include <random>

#include "support.hpp"
#include "stalab/catalog.hpp"
#include "stalab/kinematics.hpp"
#include "stalab/oracle.hpp"

using namespace stalab;
using stalab::test::close;

TEST_CASE("MZ arm a trajectory is exact") {
  const auto p = PhysicalParams::rubidium87();
  const Time T = milliseconds(100);
  const auto seq = build_mach_zehnder(p, T);
  const auto a = integrate_arm(seq.arm_a(), p, T);
  const Vec3 vr = p.recoil_velocity();
  CHECK(close(a.velocity.value(0.05), Vec3::Zero(), 0.0, 1e-15));
  CHECK(close(a.velocity_after_end, Vec3::Zero(), 0.0, 1e-15));
  CHECK(close(a.velocity.value(-0.05), vr, 1e-15));
  CHECK(close(a.position.value(Time{}, Side::Left), vr * 0.1, 1e-15));
}

TEST_CASE("piecewise value agrees at Time and double arguments") {
  const auto seq = build_butterfly(PhysicalParams::rubidium87(2), milliseconds(40));
  const auto pd = path_difference(seq);
  for (const Time t : {milliseconds(-33), milliseconds(-7), microseconds(12345), milliseconds(39)})
    CHECK(close(pd.position.value(t, Side::Right), pd.position.value(t.seconds()), 1e-12, 1e-18));
}

TEST_CASE("merge_breaks dedups exactly") {
  const std::vector<Time> a{milliseconds(1), milliseconds(3)};
  const std::vector<Time> b{milliseconds(2), nanoseconds(3'000'000)};
  const auto m = merge_breaks(a, b);
  REQUIRE(m.size() == 3);
  CHECK(m[1] == milliseconds(2));
}

TEST_CASE("oscillatory basis matches direct integrals") {
  for (const double w : {1e-6, 0.3, 7.0, 250.0}) {
    for (const double h : {1e-3, 0.1, 1.3}) {
      const auto b = oscillatory_basis(w, h);
      // reference by fine midpoint sum
      const int n = 200000;
      double re[3] = {0, 0, 0}, im[3] = {0, 0, 0};
      for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) * h / n;
        for (int k = 0; k < 3; ++k) {
          re[k] += std::pow(t, k) * std::cos(w * t) * h / n;
          im[k] += std::pow(t, k) * std::sin(w * t) * h / n;
        }
      }
      for (int k = 0; k < 3; ++k) {
        const double scale = std::pow(h, k + 1);
        CHECK(close(b.re[k], re[k], 0.0, 1e-8 * scale));
        CHECK(close(b.im[k], im[k], 0.0, 1e-8 * scale));
      }
    }
  }
}

TEST_CASE("polynomial moments against quadrature") {
  const auto seq = build_cab(PhysicalParams::rubidium87(), milliseconds(60),
                             {3, milliseconds(60) / 6, Time{}, false, {}});
  const auto pd = path_difference(seq);
  const auto one = integrate_polynomial_moment(pd, Weight::one());
  CHECK(close(one, event_area(seq), 1e-12));
  for (const double w : {0.0, 5.0, 80.0}) {
    const auto m = trig_moments(pd.position, w);
    const auto q = quadrature_transfer(seq, w);
    CHECK(close(m.cos, q.cos, 1e-9, 1e-15));
    CHECK(close(m.sin, q.sin, 1e-9, 1e-15));
    CHECK(close(integrate_polynomial_moment(pd, Weight::cos(w)), m.cos, 1e-14, 1e-18));
  }
}

TEST_CASE("laser-driven segment accumulates recoils at a / recoil speed") {
  const auto p = PhysicalParams::rubidium87();
  const Time T = milliseconds(10);
  const Vec3 a = 4.0 * p.photon_recoil_speed() / 0.002 * p.k_hat();
  const ArmTimeline arm(Arm::A, Vec3::Zero(), Vec3::Zero(), {},
                        {{milliseconds(-1), milliseconds(1), a, 0.0, 0.001}});
  const auto tr = integrate_arm(arm, p, T);
  CHECK(close(tr.recoils_after_end, 4.0, 1e-12));
}
