#include <cmath>

#include "support.hpp"
#include "stalab/catalog.hpp"
#include "stalab/errors.hpp"
#include "stalab/response.hpp"

using namespace stalab;
using stalab::test::close;

TEST_CASE("MZ transfer function") {
  const auto p = PhysicalParams::rubidium87();
  const Time T = milliseconds(100);
  const TransferEvaluator ev(build_mach_zehnder(p, T));
  const double t = T.seconds();
  CHECK(close(ev.area(), p.recoil_velocity() * t * t, 1e-14));
  CHECK(close(ev.abs_area(), ev.area().norm(), 1e-14));
  CHECK(ev.collinear());
  CHECK(close(ev.R(1e-9), 1.0, 1e-12));
  CHECK(ev.R(2 * M_PI / t) < 1e-12);
  // symmetric separation: no sine component
  CHECK(ev.Rstar(3.0) < 1e-12);
  CHECK(close(ev.at(0.0).cos, ev.area(), 1e-14));
  CHECK(ev.at(0.0).sin.norm() == 0.0);
}

TEST_CASE("zero-area and degenerate sequences") {
  const auto p = PhysicalParams::rubidium87();
  const TransferEvaluator bf(build_butterfly(p, milliseconds(20)));
  CHECK_FALSE(bf.has_area());
  CHECK_THROWS_AS(bf.R(10.0), ZeroArea);
  CHECK(bf.Rstar(10.0) > 0.0);
  const InterferometerSequence flat(p, milliseconds(20), ArmTimeline(Arm::A), ArmTimeline(Arm::B));
  CHECK_THROWS_AS(TransferEvaluator(flat).Rstar(1.0), DegenerateSequence);
}

TEST_CASE("abs_area splits at sign changes") {
  const auto p = PhysicalParams::rubidium87();
  const double t = 0.02;
  // butterfly: area 0, |Δx| integrates to a known positive value
  const auto seq = build_butterfly(p, milliseconds(20));
  const double a = abs_area(seq);
  CHECK(a > 0.0);
  CHECK(a < p.recoil_velocity().norm() * t * t * 2.0);
}

TEST_CASE("response curve") {
  const auto p = PhysicalParams::rubidium87();
  const auto seq = build_butterfly(p, milliseconds(20));
  const auto tf = response_curve(seq, 1.0, 1000.0, 50, GridScale::Log);
  REQUIRE(tf.omega.size() == 50);
  CHECK(close(tf.omega.front(), 1.0, 1e-15));
  CHECK(close(tf.omega.back(), 1000.0, 1e-12));
  CHECK(std::isnan(tf.R[7]));
  CHECK(close(tf.Rstar[7], sensitivity_Rstar(seq, tf.omega[7]), 1e-15));
  CHECK_THROWS_AS(response_curve(seq, 0.0, 10.0, 5, GridScale::Log), InvalidArgument);
  const auto csv = to_csv(tf);
  CHECK(csv.rfind("omega,Ac_x,Ac_y,Ac_z,As_x,As_y,As_z,R,Rstar\n", 0) == 0);
}
