#include "support.hpp"
#include "stalab/catalog.hpp"
#include "stalab/errors.hpp"
#include "stalab/sequence.hpp"

using namespace stalab;
using stalab::test::close;

TEST_CASE("params validation") {
  CHECK_THROWS_AS(PhysicalParams(0.0, 1.0, Vec3::UnitZ(), 1), InvalidArgument);
  CHECK_THROWS_AS(PhysicalParams(1.0, 1.0, Vec3::Zero(), 1), InvalidArgument);
  CHECK_THROWS_AS(PhysicalParams(1.0, 1.0, Vec3::UnitZ(), 0), InvalidArgument);
  const auto p = PhysicalParams::rubidium87(3);
  CHECK(close(p.recoil_velocity().norm(), 6.0 * p.photon_recoil_speed(), 1e-15));
}

TEST_CASE("kicks are sorted and simultaneous kicks merged") {
  const std::vector<ImpulseKick> kicks{{milliseconds(2), Vec3::UnitX(), 0.5, 1},
                                       {milliseconds(1), Vec3::UnitY(), 0.0, 0},
                                       {milliseconds(2), Vec3::UnitX(), 0.25, 1}};
  const ArmTimeline arm(Arm::A, Vec3::Zero(), Vec3::Zero(), kicks, {});
  REQUIRE(arm.kicks().size() == 2);
  CHECK(arm.kicks()[0].time == milliseconds(1));
  CHECK(arm.kicks()[1].dv == Vec3(2, 0, 0));
  CHECK(arm.kicks()[1].recoils == 2);
}

TEST_CASE("overlapping segments are rejected") {
  const std::vector<AccelSegment> segs{{milliseconds(0), milliseconds(5), Vec3::UnitZ()},
                                       {milliseconds(4), milliseconds(6), Vec3::UnitZ()}};
  CHECK_THROWS_AS(ArmTimeline(Arm::A, Vec3::Zero(), Vec3::Zero(), {}, segs), OverlappingSegments);
  const std::vector<AccelSegment> touching{{milliseconds(0), milliseconds(5), Vec3::UnitZ()},
                                           {milliseconds(5), milliseconds(6), Vec3::UnitZ()}};
  CHECK_NOTHROW(ArmTimeline(Arm::A, Vec3::Zero(), Vec3::Zero(), {}, touching));
}

TEST_CASE("events outside the window are rejected") {
  const auto p = PhysicalParams::rubidium87();
  const ArmTimeline late(Arm::A, Vec3::Zero(), Vec3::Zero(), {{milliseconds(11), Vec3::UnitZ()}}, {});
  CHECK_THROWS_AS(InterferometerSequence(p, milliseconds(10), late, ArmTimeline(Arm::B)), InvalidArgument);
}

TEST_CASE("catalog sequences close") {
  const auto p = PhysicalParams::rubidium87(2);
  const Environment env{Vec3(0, 0, -9.8), Vec3::Zero(), Vec3(0.01, 0, 0.2)};
  const Time T = milliseconds(50);
  CabOptions cab;
  cab.n_b = 4;
  cab.T_r = milliseconds(1);
  cab.tau_b = (T - cab.T_r * 4) / 8;
  CHECK(is_closed(build_mach_zehnder(p, T, env)));
  CHECK(is_closed(build_cab(p, T, cab, env)));
  CHECK(is_closed(build_butterfly(p, T, env)));
  CHECK(is_closed(build_recoil_triangle(p, T, env)));
  CHECK(is_closed(build_const_accel_recoil(p, T, Vec3(0, 0, 2.0), env)));
  CHECK_FALSE(is_closed(build_mach_zehnder_offset(p, T, microseconds(10))));
}

TEST_CASE("CAB rejects inconsistent Bloch counts") {
  const auto p = PhysicalParams::rubidium87();
  CabOptions cab;
  cab.n_b = 4;
  cab.tau_b = milliseconds(3);
  CHECK_THROWS_AS(build_cab(p, milliseconds(50), cab), InconsistentBlochCount);
  cab.n_b = 0;
  const auto plain = build_cab(p, milliseconds(50), cab);
  CHECK(plain.arm_a().segments().empty());
}

TEST_CASE("symmetry classes of catalog sequences") {
  const auto p = PhysicalParams::rubidium87();
  const Time T = milliseconds(20);
  const auto mz = symmetry_class(build_mach_zehnder(p, T));
  CHECK(mz.count(Symmetry::VelocitySymmetric));
  CHECK(mz.count(Symmetry::SeparationSymmetric));
  const auto bf = symmetry_class(build_butterfly(p, T));
  CHECK(bf.count(Symmetry::SeparationAntisymmetric));
  CHECK_FALSE(bf.count(Symmetry::SeparationSymmetric));
  const auto tri = symmetry_class(build_recoil_triangle(p, T));
  CHECK_FALSE(tri.count(Symmetry::VelocitySymmetric));
  CHECK_FALSE(tri.count(Symmetry::VelocityAntisymmetric));
}

TEST_CASE("arm swap negates the closure defect") {
  const auto seq = build_mach_zehnder_offset(PhysicalParams::rubidium87(), milliseconds(30), microseconds(5));
  const auto d = closure_defect(seq);
  const auto s = closure_defect(seq.with_arms_swapped());
  CHECK(close(s.position, -d.position, 1e-15));
  CHECK(close(s.velocity, -d.velocity, 1e-15));
}
