#include <cmath>

#include "support.hpp"
#include "stalab/catalog.hpp"
#include "stalab/errors.hpp"
#include "stalab/phase.hpp"

using namespace stalab;
using stalab::test::close;

namespace {
const Vec3 kG(0, 0, 9.8);
}

TEST_CASE("MZ frozen phase") {
  const auto p = PhysicalParams::rubidium87(1);
  const auto ph = total_phase(build_mach_zehnder(p, milliseconds(100), {kG}));
  CHECK(close(ph.total, 1578780.0, 1e-14));
  CHECK(ph.separation == 0.0);
  CHECK(close(ph.kinetic, 0.0, 0.0, 1e-6));
  CHECK(ph.flags.closed);
  CHECK(ph.flags.velocity_sym_i);
  CHECK(ph.flags.kinetic_cancelled);
  CHECK(close(ph.total, ph.sum(), 1e-15));
}

TEST_CASE("laser phase of a Mach-Zehnder") {
  const auto p = PhysicalParams::rubidium87(2);
  const PulsePhases phi{0.3, -0.7, 1.1, 0.0};
  const double want = 2.0 * (phi[0] - 2.0 * phi[1] + phi[2]);
  CHECK(close(std::abs(laser_phase(build_mach_zehnder(p, milliseconds(10), {}, phi))), std::abs(want), 1e-14));
  CHECK(zero_area_kicks(build_mach_zehnder(p, milliseconds(10))) == 0);
}

TEST_CASE("CAB laser phase picks up the lattice phases") {
  const auto p = PhysicalParams::rubidium87(1);
  const Time T = milliseconds(40);
  CabOptions cab;
  cab.n_b = 5;
  cab.tau_b = T / 10;
  const double base = laser_phase(build_cab(p, T, cab));
  cab.bloch_phases = {0.2, 0.0, 0.0, 0.0};
  CHECK(std::abs(laser_phase(build_cab(p, T, cab)) - base) > 0.1);
}

TEST_CASE("magnetic and offset phases") {
  const double hbar = PhysicalParams::kHbar;
  const MagneticSchedule mag{{milliseconds(-10), milliseconds(0), milliseconds(10)},
                             {Vec3(0, 0, 1e-7), Vec3(0, 0, 2e-7)},
                             {Vec3(0, 0, 9.27e-24), Vec3(0, 0, 9.27e-24)},
                             {Vec3::Zero(), Vec3::Zero()}};
  CHECK(close(magnetic_phase(mag, hbar), 3e-7 * 9.27e-24 * 0.01 / hbar, 1e-14));
  const OffsetSchedule off{{milliseconds(-10), milliseconds(10)}, {1e-30}, {3e-30}};
  CHECK(close(offset_phase(off, hbar), 2e-30 * 0.02 / hbar, 1e-14));
}

TEST_CASE("time-varying gravity") {
  const auto p = PhysicalParams::rubidium87(1);
  const auto seq = build_mach_zehnder(p, milliseconds(50));
  CHECK(close(inertial_phase_timevarying(seq, Waveform::constant(kG)), inertial_phase(seq, kG), 1e-14));
  CHECK_THROWS_AS(inertial_phase_timevarying(seq, Waveform::sampled([](double) { return kG; })),
                  UnsupportedWaveform);

  // Fourier expansion of a band-limited g(t) reproduces the closed form
  const double T = seq.T();
  const auto g = Waveform::constant(kG) + Waveform::cosine(Vec3(0, 0, 0.01), M_PI / T) +
                 Waveform::sine(Vec3(0, 0, 0.02), 3 * M_PI / T);
  const auto coeffs = fourier_coefficients([&](double t) { return g(t); }, T, 6, {});
  CHECK(close(coeffs.cos[0], kG, 1e-12));
  CHECK(close(fourier_phase(seq, coeffs), inertial_phase_timevarying(seq, g), 1e-10));
}

TEST_CASE("Sagnac term for horizontal launch") {
  const auto p = PhysicalParams::rubidium87(1);
  const Vec3 omega(0, 5e-5, 0);
  const Vec3 vi(0.3, 0, 0);
  const Time T = milliseconds(100);
  const auto seq = build_mach_zehnder(p, T, {kG, omega, vi});
  const double t = T.seconds();
  CHECK(close(sagnac_phase(seq), -4.0 * t * t * p.k().dot(omega.cross(vi)), 1e-13));
  const auto ph = total_phase(seq);
  CHECK_FALSE(ph.flags.sagnac_nonperturbative);
  CHECK_FALSE(ph.flags.sagnac_noncollinear);
  PhaseOptions off;
  off.sagnac = false;
  CHECK(total_phase(seq, off).sagnac == 0.0);
  CHECK(total_phase(seq.with_rotation(Vec3(0, 0.5, 0))).flags.sagnac_nonperturbative);
}

TEST_CASE("open sequences") {
  const auto p = PhysicalParams::rubidium87(1);
  const auto seq = build_mach_zehnder_offset(p, milliseconds(100), microseconds(10));
  const auto ph = total_phase(seq);
  CHECK_FALSE(ph.flags.closed);
  CHECK(close(ph.separation, 8.0 * p.recoil_frequency() * 1e-5, 1e-9));
  CHECK(close(ph.kinetic, 0.5 * ph.separation, 1e-9));
  CHECK(close(open_separation_phase(Vec3(0, 0, 1e-6), Vec3(0, 0, 2.0)), 2e-6, 1e-15));
}

TEST_CASE("non-interfering sequences throw") {
  const auto p = PhysicalParams::rubidium87(1);
  const ArmTimeline a(Arm::A, Vec3::Zero(), Vec3::Zero(), {{milliseconds(-5), p.recoil_velocity(), 0.0, 2}}, {});
  const InterferometerSequence seq(p, milliseconds(10), a, ArmTimeline(Arm::B));
  CHECK_THROWS_AS(separation_phase(seq), NotInterfering);
  CHECK_THROWS_AS(total_phase(seq), NotInterfering);
}

TEST_CASE("kinetic phase matches the recoil-count form") {
  const auto p = PhysicalParams::rubidium87(3);
  const auto seq = build_recoil_triangle(p, milliseconds(70));
  CHECK(close(kinetic_phase(seq), recoil_kinetic_phase(seq), 1e-12));
  CHECK(close(kinetic_phase(seq), 72.0 * p.recoil_frequency() * 0.07, 1e-12));
}

TEST_CASE("report formats") {
  const auto ph = total_phase(build_mach_zehnder(PhysicalParams::rubidium87(), milliseconds(1), {kG}));
  const auto kv = to_kv(ph);
  CHECK(kv.find("total=") != std::string::npos);
  CHECK(kv.find("closed=1") != std::string::npos);
  CHECK(to_csv(ph).rfind("term,radians\n", 0) == 0);
}
