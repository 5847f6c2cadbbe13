// Acceptance suite: one line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "stalab/catalog.hpp"
#include "stalab/errors.hpp"
#include "stalab/generators.hpp"
#include "stalab/oracle.hpp"
#include "stalab/phase.hpp"
#include "stalab/response.hpp"

namespace {

using namespace stalab;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> run;
};

// Largest relative error seen and whether every sample met its tolerance.
struct Tally {
  double worst = 0.0;
  int failures = 0;
  int samples = 0;

  void check(double got, double want, double rel_tol, double abs_floor = 0.0) {
    const double err = std::abs(got - want);
    const double rel = want != 0.0 ? err / std::abs(want) : err;
    ++samples;
    if (std::isfinite(rel)) worst = std::max(worst, rel);
    if (!(err <= std::max(rel_tol * std::abs(want), abs_floor))) ++failures;
  }
  void require(bool ok) {
    ++samples;
    if (!ok) ++failures;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Time random_ticks(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return nanoseconds(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int integer(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v(n(rng), n(rng), n(rng));
  return v / v.norm();
}

Vec3 perpendicular_to(const Vec3& k, std::mt19937_64& rng) {
  Vec3 v = random_direction(rng);
  v -= v.dot(k) * k;
  return v / v.norm();
}

CabOptions cab(int n_b, Time T, Time T_r) {
  CabOptions o;
  o.n_b = n_b;
  o.T_r = T_r;
  o.tau_b = (T - T_r * 4) / (2 * n_b);
  return o;
}

Outcome mach_zehnder() {
  std::mt19937_64 rng(101);
  Tally analytic, oracle;
  for (int i = 0; i < 20; ++i) {
    const int n = integer(rng, 1, 10);
    const Vec3 k_hat = random_direction(rng);
    const PhysicalParams p(PhysicalParams::kRb87Mass, PhysicalParams::kHbar,
                           PhysicalParams::kRb87WaveNumber * k_hat, n);
    const Time T = random_ticks(rng, 1'000'000, 1'000'000'000);
    const Vec3 g = uniform(rng, -10.0, 10.0) * k_hat;
    const auto seq = build_mach_zehnder(p, T, {g});
    const double total = total_phase(seq).total;
    analytic.check(total, 2.0 * n * p.k().dot(g) * T.seconds() * T.seconds(), 1e-9);
    oracle.check(total, action_phase(seq), 1e-9);
  }
  return {analytic.failures + oracle.failures == 0,
          "20 tuples, max rel err vs closed form " + fmt("%.1e", analytic.worst) + ", vs oracle " +
              fmt("%.1e", oracle.worst)};
}

Outcome cab_phase() {
  std::mt19937_64 rng(202);
  Tally analytic, oracle, area;
  for (int i = 0; i < 20; ++i) {
    const int n = integer(rng, 1, 5);
    const int n_b = integer(rng, 1, 20);
    const auto p = PhysicalParams::rubidium87(n);
    const Time T = random_ticks(rng, 10'000'000, 1'000'000'000);
    const Time T_r = random_ticks(rng, 0, T.num() / 8);
    const Vec3 g = uniform(rng, -10.0, 10.0) * p.k_hat();
    auto opts = cab(n_b, T, T_r);
    const auto seq = build_cab(p, T, opts, {g});
    const double t = T.seconds(), tr = T_r.seconds();
    const double want = 2.0 * (n + n_b * (0.5 - 2.0 * tr / t)) * p.k().dot(g) * t * t;
    const double total = total_phase(seq).total;
    analytic.check(total, want, 1e-9);
    oracle.check(total, action_phase(seq), 1e-9);

    opts.kick_train = true;
    const auto train = build_cab(p, T, opts, {g});
    const auto report = kicktrain_equivalence(seq, train);
    area.check(space_time_area(train).dot(p.k_hat()), space_time_area(seq).dot(p.k_hat()), 1e-12);
    area.require(report.area_equal);
  }
  return {analytic.failures + oracle.failures + area.failures == 0,
          "20 sets, phase rel err " + fmt("%.1e", analytic.worst) + " (closed form), " +
              fmt("%.1e", oracle.worst) + " (oracle); kick-train area rel diff " +
              fmt("%.1e", area.worst)};
}

Outcome butterfly() {
  const auto p = PhysicalParams::rubidium87(2);
  Tally zero, rstar, small;
  for (const Time T : {milliseconds(10), milliseconds(100), nanoseconds(123'456'789), milliseconds(1000)}) {
    const auto seq = build_butterfly(p, T);
    zero.require(space_time_area(seq) == Vec3::Zero());
    const TransferEvaluator ev(seq);
    const double t = T.seconds();
    for (int i = 1; i <= 200; ++i) {
      const double x = 0.2 * i;
      const double want = std::abs(32.0 * std::pow(std::sin(x / 4), 3) * std::cos(x / 4) / (x * x));
      rstar.check(ev.Rstar(x / t), want, 1e-8);
    }
    for (const double x : {1e-4, 1e-3, 0.01, 0.03, 0.049}) {
      const Vec3 a_s = 0.01 * p.k_hat();
      const double w = x / t;
      const double phase = inertial_phase_timevarying(seq, Waveform::sine(a_s, w));
      small.check(std::abs(phase), std::abs(p.order() * p.k().dot(a_s) * w * t * t * t / 2.0), 1e-2);
    }
  }
  return {zero.failures + rstar.failures + small.failures == 0,
          "area exactly zero for 4 T; R* max rel err " + fmt("%.1e", rstar.worst) +
              " over 800 points; small-wT response within " + fmt("%.2f%%", 100 * small.worst)};
}

Outcome transfer_functions() {
  const auto p = PhysicalParams::rubidium87(1);
  const Time T = milliseconds(100);
  const double t = T.seconds();
  Tally exact, quad;
  const auto mz = build_mach_zehnder(p, T);
  const TransferEvaluator mz_ev(mz);
  const double mz_area = mz_ev.area().dot(p.k_hat());
  for (int i = 1; i <= 200; ++i) {
    const double x = 0.2 * i;
    const double want = 4.0 * std::pow(std::sin(x / 2), 2) / (x * x);
    exact.check(mz_ev.R(x / t), want, 1e-8, 1e-12);
    quad.check(std::abs(quadrature_transfer(mz, x / t).cos.dot(p.k_hat()) / mz_area), want, 1e-8, 1e-12);
  }
  for (const int n_b : {1, 4, 20}) {
    const auto seq = build_cab(p, T, cab(n_b, T, Time{}));
    const TransferEvaluator ev(seq);
    const double area = ev.area().dot(p.k_hat());
    const double eps = n_b / (2.0 * p.order());
    for (int i = 1; i <= 200; ++i) {
      const double x = 0.2 * i;
      const double r_mz = 4.0 * std::pow(std::sin(x / 2), 2) / (x * x);
      const double r_t3 = 64.0 * std::cos(x / 4) * std::pow(std::sin(x / 4), 3) / (x * x * x);
      const double want = std::abs(r_mz / (1.0 + eps) + r_t3 / (1.0 + 1.0 / eps));
      exact.check(ev.R(x / t), want, 1e-8, 1e-12);
      quad.check(std::abs(quadrature_transfer(seq, x / t).cos.dot(p.k_hat()) / area), want, 1e-8, 1e-12);
    }
  }
  return {exact.failures + quad.failures == 0,
          std::to_string(exact.samples) + " points, max rel err " + fmt("%.1e", exact.worst) +
              " (segment integrals), " + fmt("%.1e", quad.worst) + " (quadrature)"};
}

Outcome recoil() {
  std::mt19937_64 rng(505);
  Tally tri, accel, rewrite;
  for (int i = 0; i < 10; ++i) {
    const int n = integer(rng, 1, 10);
    const auto p = PhysicalParams::rubidium87(n);
    const Time T = random_ticks(rng, 1'000'000, 1'000'000'000);
    const double t = T.seconds();
    tri.check(kinetic_phase(build_recoil_triangle(p, T)), 8.0 * n * n * p.recoil_frequency() * t, 1e-10);

    const int n_b = integer(rng, 1, 50);
    const double tau = t / (2.0 * n_b);
    const Vec3 g = uniform(rng, -10.0, 10.0) * p.k_hat();
    const Vec3 a = 4.0 * n_b * p.hbar() / (p.mass() * t) * p.k();
    const double total = total_phase(build_const_accel_recoil(p, T, a, {g})).total;
    const double w = p.recoil_frequency(), kg = p.k().dot(g);
    accel.check(total, 8.0 / 3.0 * n_b * n_b * w * t - n_b * kg * t * t, 1e-10);
    rewrite.check(total, (2.0 * w / (3.0 * tau * tau) - kg / (2.0 * tau)) * t * t * t, 1e-10);
  }
  return {tri.failures + accel.failures + rewrite.failures == 0,
          "triangle rel err " + fmt("%.1e", tri.worst) + ", constant-acceleration " +
              fmt("%.1e", accel.worst) + ", T^3 form " + fmt("%.1e", rewrite.worst)};
}

Outcome separation() {
  Tally offset, closed;
  for (const int n : {1, 3}) {
    const auto p = PhysicalParams::rubidium87(n);
    for (const std::int64_t us : {-10, -1, 1, 10}) {
      const auto seq = build_mach_zehnder_offset(p, milliseconds(100), microseconds(us));
      offset.check(separation_phase(seq), 8.0 * n * n * p.recoil_frequency() * us * 1e-6, 1e-9);
    }
    const Environment env{9.8 * p.k_hat(), Vec3::Zero(), Vec3(0.1, 0.2, 0.3)};
    const Time T = milliseconds(80);
    for (const auto& seq : {build_mach_zehnder(p, T, env), build_cab(p, T, cab(5, T, milliseconds(2)), env),
                            build_butterfly(p, T, env), build_recoil_triangle(p, T, env),
                            build_const_accel_recoil(p, T, 3.0 * p.k_hat(), env)})
      closed.require(separation_phase(seq) == 0.0);
  }
  return {offset.failures + closed.failures == 0,
          "timing offset max rel err " + fmt("%.1e", offset.worst) + "; " +
              std::to_string(closed.samples - closed.failures) + "/" + std::to_string(closed.samples) +
              " closed sequences exactly 0"};
}

Outcome sagnac() {
  std::mt19937_64 rng(707);
  Tally golden, oracle;
  for (int i = 0; i < 10; ++i) {
    const int n = integer(rng, 1, 5);
    const auto p = PhysicalParams::rubidium87(n);
    const Vec3 k_hat = p.k_hat();
    const Vec3 omega = uniform(rng, 1e-6, 7.3e-5) * random_direction(rng);
    const Vec3 vi = uniform(rng, 0.05, 1.0) * perpendicular_to(k_hat, rng);
    const Vec3 g = uniform(rng, -10.0, 10.0) * k_hat;
    const Environment env{g, omega, vi};
    const Time T = random_ticks(rng, 10'000'000, 500'000'000);
    const double t = T.seconds();
    const Vec3 eff = g - 2.0 * omega.cross(vi);

    const auto mz = build_mach_zehnder(p, T, env);
    auto ph = total_phase(mz);
    golden.check(ph.inertial + ph.sagnac, 2.0 * n * p.k().dot(eff) * t * t, 1e-8);
    oracle.check(ph.sagnac, sagnac_oracle(mz, omega), 1e-8);

    const int n_b = integer(rng, 1, 20);
    const auto opts = cab(n_b, T, Time{});
    const double tau = opts.tau_b.seconds();
    const auto cab_seq = build_cab(p, T, opts, env);
    ph = total_phase(cab_seq);
    golden.check(ph.inertial + ph.sagnac, (2.0 * n * t * t + t * t * t / (2.0 * tau)) * p.k().dot(eff), 1e-8);
    oracle.check(ph.sagnac, sagnac_oracle(cab_seq, omega), 1e-8);
  }
  return {golden.failures + oracle.failures == 0,
          "MZ and CAB, 10 draws each: rel err vs closed forms " + fmt("%.1e", golden.worst) +
              ", vs perturbative-Lagrangian oracle " + fmt("%.1e", oracle.worst)};
}

Outcome properties() {
  std::mt19937_64 rng(808);
  Tally kin, sym, decomposition;
  for (int i = 0; i < 100; ++i) {
    for (const bool anti : {false, true}) {
      const auto seq = random_mirrored_sequence(rng, anti);
      const auto ph = total_phase(seq);
      kin.require(ph.flags.kinetic_cancelled && (anti ? ph.flags.velocity_sym_ii : ph.flags.velocity_sym_i));
    }
  }
  for (int i = 0; i < 100; ++i) {
    for (const bool anti : {false, true}) {
      const auto seq = random_separation_symmetric_sequence(rng, anti);
      const TransferEvaluator ev(seq);
      const double scale = ev.abs_area();
      for (int j = 0; j < 10; ++j) {
        const double w = uniform(rng, 0.0, 100.0 / seq.T());
        const auto tr = ev.at(w);
        sym.require((anti ? tr.cos : tr.sin).norm() <= 1e-12 * scale);
      }
    }
  }
  for (int i = 0; i < 100; ++i) {
    const auto seq = random_closed_sequence(rng);
    const auto ph = total_phase(seq);
    decomposition.check(ph.separation + ph.kinetic + ph.inertial, action_phase(seq), 1e-9);
  }
  return {kin.failures + sym.failures + decomposition.failures == 0,
          "(a) " + std::to_string(kin.samples - kin.failures) + "/" + std::to_string(kin.samples) +
              " mirrored sequences cancel; (b) " + std::to_string(sym.samples - sym.failures) + "/" +
              std::to_string(sym.samples) + " transfer samples vanish; (c) decomposition max rel err " +
              fmt("%.1e", decomposition.worst) + " over 100 sequences"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Mach-Zehnder phase", 1.0, mach_zehnder},
      {2, "CAB phase and kick-train area", 0.0, cab_phase},
      {3, "Butterfly area and R*", 0.0, butterfly},
      {4, "Transfer-function golden forms", 5.0, transfer_functions},
      {5, "Recoil results", 0.0, recoil},
      {6, "Separation phase", 0.0, separation},
      {7, "Sagnac", 0.0, sagnac},
      {8, "Property suites", 60.0, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += "; exceeded " + fmt("%.0f s", c.time_limit);
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
