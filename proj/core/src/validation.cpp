#include "stalab/validation.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "stalab/catalog.hpp"
#include "stalab/generators.hpp"
#include "stalab/phase.hpp"
#include "stalab/response.hpp"

namespace stalab {
namespace {

struct Case {
  std::string id;
  std::function<OracleReport(const std::string&, const ValidationOptions&)> run;
};

PhysicalParams rb(int n) { return PhysicalParams::rubidium87(n); }
Vec3 along_k(double v) { return Vec3(0.0, 0.0, v); }

double laser(const InterferometerSequence& seq, Mutation m) {
  const double a = arm_laser_phase(seq.arm_a(), seq.params());
  const double b = arm_laser_phase(seq.arm_b(), seq.params());
  return m == Mutation::LaserSignFlip ? a + b : a - b;
}

CabOptions cab_options(double n_b, Time T, Time T_r) {
  CabOptions o;
  o.n_b = n_b;
  o.T_r = T_r;
  o.tau_b = (T - T_r * 4) / static_cast<std::int64_t>(2 * n_b);
  return o;
}

std::vector<Case> all_cases() {
  std::vector<Case> cases;
  const auto add = [&cases](std::string id, auto fn) { cases.push_back({std::move(id), fn}); };

  add("golden/mz-phase", [](const std::string& id, const ValidationOptions&) {
    const auto p = rb(2);
    const Environment env{along_k(9.8)};
    const auto seq = build_mach_zehnder(p, milliseconds(100), env);
    return compare(id, total_phase(seq).total, 2.0 * 2 * p.k().dot(env.gravity) * 0.01, 1e-12);
  });
  add("oracle/mz-action", [](const std::string& id, const ValidationOptions& o) {
    const auto seq = build_mach_zehnder(rb(3), milliseconds(250), {along_k(9.81)});
    return compare(id, total_phase(seq).total, action_phase(seq, o.oracle), 1e-9);
  });
  add("golden/laser-mz", [](const std::string& id, const ValidationOptions& o) {
    const int n = 3;
    const PulsePhases ph{0.3, -1.1, 0.7, 0.0};
    const auto seq = build_mach_zehnder(rb(n), milliseconds(50), {}, ph);
    return compare(id, laser(seq, o.mutation), n * (ph[0] - 2 * ph[1] + ph[2]), 1e-12);
  });
  add("golden/laser-cab", [](const std::string& id, const ValidationOptions& o) {
    const int n = 2;
    const double n_b = 5;
    auto opts = cab_options(n_b, milliseconds(80), milliseconds(2));
    opts.bloch_phases = {0.2, 0.5, -0.4, 0.9};
    const PulsePhases ph{0.1, 0.3, -0.6, 0.0};
    const auto seq = build_cab(rb(n), milliseconds(80), opts, {}, ph);
    const auto& b = opts.bloch_phases;
    const double expect = n * (ph[0] - 2 * ph[1] + ph[2]) + n_b * (b[0] - b[1] - b[2] + b[3]);
    return compare(id, laser(seq, o.mutation), expect, 1e-12);
  });
  add("golden/cab-phase", [](const std::string& id, const ValidationOptions&) {
    const int n = 1;
    const double n_b = 10, T = 0.1, Tr = 0.001;
    const auto p = rb(n);
    const Environment env{along_k(9.8)};
    const auto seq = build_cab(p, milliseconds(100), cab_options(n_b, milliseconds(100), milliseconds(1)), env);
    const double expect = 2.0 * (n + n_b * (0.5 - 2.0 * Tr / T)) * p.k().dot(env.gravity) * T * T;
    return compare(id, total_phase(seq).total, expect, 1e-9);
  });
  add("oracle/cab-action", [](const std::string& id, const ValidationOptions& o) {
    const auto seq = build_cab(rb(1), milliseconds(100), cab_options(4, milliseconds(100), milliseconds(2)),
                               {along_k(9.8)});
    return compare(id, total_phase(seq).total, action_phase(seq, o.oracle), 1e-9);
  });
  add("oracle/cab-kicktrain-area", [](const std::string& id, const ValidationOptions& o) {
    auto opts = cab_options(6, milliseconds(100), milliseconds(1));
    const auto cont = build_cab(rb(1), milliseconds(100), opts, {along_k(9.8)});
    opts.kick_train = true;
    const auto train = build_cab(rb(1), milliseconds(100), opts, {along_k(9.8)});
    const auto r = kicktrain_equivalence(cont, train, o.oracle);
    return compare(id, r.area_kicktrain.z(), r.area_continuous.z(), 1e-12);
  });
  add("golden/butterfly-area", [](const std::string& id, const ValidationOptions&) {
    const auto seq = build_butterfly(rb(1), milliseconds(100));
    const TransferEvaluator ev(seq);
    return compare(id, ev.area().norm(), 0.0, 0.0, 1e-12 * ev.abs_area());
  });
  add("golden/butterfly-rstar", [](const std::string& id, const ValidationOptions&) {
    const double T = 0.1, w = 37.0;
    const auto seq = build_butterfly(rb(1), milliseconds(100));
    const double x = w * T;
    const double expect = std::abs(32.0 * std::pow(std::sin(x / 4), 3) * std::cos(x / 4) / (x * x));
    return compare(id, sensitivity_Rstar(seq, w), expect, 1e-8);
  });
  add("golden/triangle-kinetic", [](const std::string& id, const ValidationOptions&) {
    const int n = 2;
    const auto p = rb(n);
    const auto seq = build_recoil_triangle(p, milliseconds(20));
    return compare(id, kinetic_phase(seq), 8.0 * n * n * p.recoil_frequency() * 0.02, 1e-10);
  });
  add("oracle/triangle-action", [](const std::string& id, const ValidationOptions& o) {
    const auto seq = build_recoil_triangle(rb(2), milliseconds(20), {along_k(9.8)});
    return compare(id, total_phase(seq).total, action_phase(seq, o.oracle), 1e-9);
  });
  add("golden/constaccel-phase", [](const std::string& id, const ValidationOptions&) {
    const double n_b = 3, T = 0.05;
    const auto p = rb(1);
    const Vec3 a = 4.0 * n_b * p.hbar() / (p.mass() * T) * p.k();
    const Environment env{along_k(9.8)};
    const auto seq = build_const_accel_recoil(p, milliseconds(50), a, env);
    const double expect = 8.0 / 3.0 * n_b * n_b * p.recoil_frequency() * T -
                          n_b * p.k().dot(env.gravity) * T * T;
    return compare(id, total_phase(seq).total, expect, 1e-10);
  });
  add("golden/separation-offset", [](const std::string& id, const ValidationOptions&) {
    const int n = 2;
    const auto p = rb(n);
    const auto seq = build_mach_zehnder_offset(p, milliseconds(100), microseconds(10));
    return compare(id, separation_phase(seq), 8.0 * n * n * p.recoil_frequency() * 10e-6, 1e-9);
  });
  add("golden/response-mz", [](const std::string& id, const ValidationOptions&) {
    const double T = 0.1, w = 13.7;
    const auto seq = build_mach_zehnder(rb(1), milliseconds(100));
    const double s = std::sin(w * T / 2);
    return compare(id, sensitivity_R(seq, w), 4.0 * s * s / (w * T * w * T), 1e-8);
  });
  add("oracle/response-quadrature", [](const std::string& id, const ValidationOptions& o) {
    const auto seq = build_cab(rb(1), milliseconds(100), cab_options(4, milliseconds(100), milliseconds(2)));
    const double w = 91.0;
    return compare(id, transfer(seq, w).cos.z(), quadrature_transfer(seq, w, o.oracle).cos.z(), 1e-8,
                   1e-12 * space_time_area(seq).norm());
  });
  add("sagnac/mz-coriolis", [](const std::string& id, const ValidationOptions&) {
    const int n = 1;
    const double T = 0.2;
    const auto p = rb(n);
    Environment env{along_k(9.8), Vec3(0.0, 7.292e-5, 0.0), Vec3(0.3, 0.0, 0.0)};
    const auto seq = build_mach_zehnder(p, milliseconds(200), env);
    const auto ph = total_phase(seq);
    const Vec3 eff = env.gravity - 2.0 * env.rotation.cross(env.initial_velocity);
    return compare(id, ph.inertial + ph.sagnac, 2.0 * n * p.k().dot(eff) * T * T, 1e-10);
  });
  add("sagnac/mz-oracle", [](const std::string& id, const ValidationOptions& o) {
    Environment env{along_k(9.8), Vec3(2e-5, 7e-5, 1e-5), Vec3(0.3, -0.1, 0.2)};
    const auto seq = build_mach_zehnder(rb(2), milliseconds(150), env);
    return compare(id, sagnac_phase(seq), sagnac_oracle(seq, env.rotation, o.oracle), 1e-8);
  });
  add("sagnac/cab-oracle", [](const std::string& id, const ValidationOptions& o) {
    Environment env{along_k(9.8), Vec3(0.0, 7.292e-5, 0.0), Vec3(0.25, 0.0, 0.0)};
    const auto seq = build_cab(rb(1), milliseconds(100), cab_options(8, milliseconds(100), milliseconds(1)), env);
    return compare(id, sagnac_phase(seq), sagnac_oracle(seq, env.rotation, o.oracle), 1e-8);
  });
  add("sagnac/random-closed", [](const std::string& id, const ValidationOptions& o) {
    std::mt19937_64 rng(o.oracle.seed + 7);
    auto seq = random_closed_sequence(rng);
    const Vec3 omega(3e-5, -5e-5, 4e-5);
    seq = seq.with_rotation(omega);
    return compare(id, sagnac_phase(seq), sagnac_oracle(seq, omega, o.oracle), 1e-8);
  });
  for (int i = 0; i < 5; ++i) {
    add("oracle/random-closed-" + std::to_string(i), [i](const std::string& id, const ValidationOptions& o) {
      std::mt19937_64 rng(o.oracle.seed + static_cast<std::uint64_t>(i));
      const auto seq = random_closed_sequence(rng);
      const auto ph = total_phase(seq);
      return compare(id, ph.separation + ph.kinetic + ph.inertial, action_phase(seq, o.oracle), 1e-9);
    });
  }
  return cases;
}

}  // namespace

std::size_t ValidationResult::failures() const {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.pass ? 0 : 1;
  return n;
}

ValidationResult run_validation(const ValidationOptions& options) {
  ValidationResult result;
  for (const auto& c : all_cases()) {
    if (!options.filter.empty() && c.id.find(options.filter) == std::string::npos) continue;
    try {
      result.reports.push_back(c.run(c.id, options));
    } catch (const std::exception& e) {
      OracleReport r;
      r.case_id = c.id + " (" + e.what() + ")";
      r.abs_err = r.rel_err = std::nan("");
      result.reports.push_back(r);
    }
  }
  return result;
}

std::vector<std::string> validation_case_ids() {
  std::vector<std::string> ids;
  for (const auto& c : all_cases()) ids.push_back(c.id);
  return ids;
}

std::string to_text(const ValidationResult& result) {
  std::ostringstream os;
  for (const auto& r : result.reports) os << to_kv(r);
  os << "summary: " << result.reports.size() - result.failures() << "/" << result.reports.size()
     << " passed\n";
  for (const auto& r : result.reports)
    if (!r.pass) os << "FAILED " << r.case_id << '\n';
  return os.str();
}

}  // namespace stalab
