#include "stalab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "stalab/errors.hpp"
#include "stalab/quadrature.hpp"

namespace stalab {

EventPath::EventPath(const ArmTimeline& arm, const InterferometerSequence& seq)
    : t0_(-seq.T()),
      x0_(arm.initial_position()),
      v0_(seq.initial_velocity() + arm.initial_velocity()) {
  for (const auto& k : arm.kicks()) kicks_.push_back({k.time.seconds(), k.dv});
  for (const auto& s : arm.segments()) segs_.push_back({s.start.seconds(), s.end.seconds(), s.accel});
}

Vec3 EventPath::position(double t) const {
  Vec3 x = x0_ + v0_ * (t - t0_);
  for (const auto& k : kicks_)
    if (k.t < t) x += k.dv * (t - k.t);
  for (const auto& s : segs_) {
    if (t <= s.start) continue;
    const double d = std::min(t, s.end) - s.start;
    x += s.a * (0.5 * d * d);
    if (t > s.end) x += s.a * (d * (t - s.end));
  }
  return x;
}

Vec3 EventPath::velocity(double t, bool after) const {
  Vec3 v = v0_;
  for (const auto& k : kicks_)
    if (k.t < t || (after && k.t == t)) v += k.dv;
  for (const auto& s : segs_) {
    if (t <= s.start) continue;
    v += s.a * (std::min(t, s.end) - s.start);
  }
  return v;
}

Vec3 EventPath::acceleration(double lo, double hi) const {
  const double mid = 0.5 * (lo + hi);
  Vec3 a = Vec3::Zero();
  for (const auto& s : segs_)
    if (s.start < mid && mid < s.end) a += s.a;
  return a;
}

std::vector<double> oracle_grid(const InterferometerSequence& seq) {
  std::vector<double> g{-seq.T(), seq.T()};
  for (const ArmTimeline* arm : {&seq.arm_a(), &seq.arm_b()}) {
    for (const auto& k : arm->kicks()) g.push_back(k.time.seconds());
    for (const auto& s : arm->segments()) {
      g.push_back(s.start.seconds());
      g.push_back(s.end.seconds());
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

namespace {

struct NodeState {
  double t;
  bool after;  // take post-kick velocities at this node
  Vec3 xg, vg, g;
  Vec3 acc_a, acc_b;
};

struct SimpsonResult {
  double value;
  double magnitude;
  std::vector<Vec3> boundary_xg;  // free-fall position at each grid point
};

// Composite Simpson of `f` over every grid interval with `n` (even) subintervals,
// while carrying the free-fall state x_g'' = g(t) along by RK4 from rest at -T.
template <typename F>
SimpsonResult simpson_on_grid(const std::vector<double>& grid, int n,
                              const std::function<Vec3(double)>& g, const EventPath& pa,
                              const EventPath& pb, F&& f) {
  SimpsonResult out{0.0, 0.0, {}};
  out.boundary_xg.reserve(grid.size());
  Vec3 xg = Vec3::Zero(), vg = Vec3::Zero();
  out.boundary_xg.push_back(xg);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double lo = grid[j], hi = grid[j + 1];
    const double h = (hi - lo) / n;
    NodeState s{lo, true, xg, vg, g(lo), pa.acceleration(lo, hi), pb.acceleration(lo, hi)};
    double acc = 0.0, mag = 0.0;
    for (int i = 0; i <= n; ++i) {
      if (i > 0) {
        const double t = lo + (i - 1) * h;
        const Vec3 g0 = s.g, gm = g(t + 0.5 * h);
        const Vec3 g1 = (i == n) ? g(hi) : g(t + h);
        s.xg += h * (s.vg + (h / 6.0) * (g0 + 2.0 * gm));
        s.vg += (h / 6.0) * (g0 + 4.0 * gm + g1);
        s.t = (i == n) ? hi : lo + i * h;
        s.g = g1;
        s.after = i < n;
      }
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double v = f(s);
      acc += w * v;
      mag += w * std::abs(v);
    }
    out.value += acc * h / 3.0;
    out.magnitude += mag * h / 3.0;
    xg = s.xg;
    vg = s.vg;
    out.boundary_xg.push_back(xg);
  }
  return out;
}

double richardson(double coarse, double fine, double scale, const OracleConfig& cfg,
                  const char* what) {
  const double err = std::abs(fine - coarse) / 15.0;
  const double tol = std::max(cfg.rel_tol * std::abs(fine), cfg.abs_tol * scale);
  if (!(err <= tol)) {
    std::ostringstream os;
    os << what << ": refinement changed the result by " << err << " (tolerance " << tol << ")";
    throw ToleranceNotMet(os.str());
  }
  return fine + (fine - coarse) / 15.0;
}

void check_config(const OracleConfig& cfg) {
  if (cfg.points_per_interval < 2 || !(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw InvalidArgument("oracle config: need points_per_interval >= 2 and positive tolerances");
}

}  // namespace

double action_phase(const InterferometerSequence& seq, const std::function<Vec3(double)>& g,
                    const OracleConfig& cfg) {
  check_config(cfg);
  const EventPath pa(seq.arm_a(), seq), pb(seq.arm_b(), seq);
  const auto grid = oracle_grid(seq);

  const auto lagrangian = [&](const NodeState& s) {
    const Vec3 va = pa.velocity(s.t, s.after), vb = pb.velocity(s.t, s.after);
    const Vec3 xa = pa.position(s.t), xb = pb.position(s.t);
    return 0.5 * (va - vb).dot(va + vb + 2.0 * s.vg) + s.g.dot(xa - xb) +
           s.acc_a.dot(xa + s.xg) - s.acc_b.dot(xb + s.xg);
  };
  const auto impulses = [&](const std::vector<Vec3>& xg, double& mag) {
    double sum = 0.0;
    for (const auto* p : {&pa, &pb}) {
      const double sign = p == &pa ? 1.0 : -1.0;
      for (const auto& k : p->kicks()) {
        const auto idx = std::lower_bound(grid.begin(), grid.end(), k.t) - grid.begin();
        const double term = k.dv.dot(p->position(k.t) + xg[idx]);
        sum += sign * term;
        mag += std::abs(term);
      }
    }
    return sum;
  };

  const int n = cfg.points_per_interval + cfg.points_per_interval % 2;
  auto coarse = simpson_on_grid(grid, n, g, pa, pb, lagrangian);
  auto fine = simpson_on_grid(grid, 2 * n, g, pa, pb, lagrangian);
  double mag_c = coarse.magnitude, mag_f = fine.magnitude;
  const double ic = coarse.value + impulses(coarse.boundary_xg, mag_c);
  const double iff = fine.value + impulses(fine.boundary_xg, mag_f);
  const double m_hbar = seq.params().mass() / seq.params().hbar();
  return m_hbar * richardson(ic, iff, mag_f, cfg, "action_phase");
}

double action_phase(const InterferometerSequence& seq, const OracleConfig& cfg) {
  const Vec3 g = seq.gravity();
  return action_phase(seq, [g](double) { return g; }, cfg);
}

namespace {

double separation_scale(const EventPath& pa, const EventPath& pb, const std::vector<double>& grid) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    for (int i = 0; i <= 4; ++i) {
      const double t = grid[j] + (grid[j + 1] - grid[j]) * i / 4.0;
      s = std::max(s, (pa.position(t) - pb.position(t)).norm());
    }
  }
  return s * (grid.back() - grid.front());
}

}  // namespace

QuadratureTransfer quadrature_transfer(const InterferometerSequence& seq, double omega,
                                       const OracleConfig& cfg) {
  check_config(cfg);
  if (!(omega >= 0.0)) throw InvalidArgument("omega must be non-negative");
  const EventPath pa(seq.arm_a(), seq), pb(seq.arm_b(), seq);
  const auto grid = oracle_grid(seq);
  const double scale = separation_scale(pa, pb, grid);
  if (scale == 0.0) return {};

  using V6 = Eigen::Matrix<double, 6, 1>;
  const auto f = [&](double t) {
    const Vec3 d = pa.position(t) - pb.position(t);
    V6 r;
    r << d * std::cos(omega * t), d * std::sin(omega * t);
    return r;
  };
  // chunks of at most a tenth of a period, so each starts with >= 50 nodes per period
  const double period = omega > 0.0 ? 2.0 * M_PI / omega : std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> chunks;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double lo = grid[j], hi = grid[j + 1];
    const int m = std::max(1, static_cast<int>(std::ceil((hi - lo) / (period / 10.0))));
    for (int i = 0; i < m; ++i) chunks.emplace_back(lo + (hi - lo) * i / m, lo + (hi - lo) * (i + 1) / m);
  }
  const double tol = 0.1 * cfg.abs_tol * scale / static_cast<double>(chunks.size());
  V6 sum = V6::Zero();
  for (const auto& [lo, hi] : chunks) sum += adaptive_simpson<V6>(f, lo, hi, tol);
  return {sum.head<3>(), sum.tail<3>()};
}

double quadrature_inertial(const InterferometerSequence& seq, const std::function<Vec3(double)>& g,
                           const std::vector<double>& breakpoints, const OracleConfig& cfg) {
  check_config(cfg);
  const EventPath pa(seq.arm_a(), seq), pb(seq.arm_b(), seq);
  auto grid = oracle_grid(seq);
  for (double b : breakpoints)
    if (b > grid.front() && b < grid.back()) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double gmax = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j)
    for (int i = 1; i < 8; ++i) gmax = std::max(gmax, g(grid[j] + (grid[j + 1] - grid[j]) * i / 8.0).norm());
  const double scale = separation_scale(pa, pb, grid) * gmax;
  if (scale == 0.0) return 0.0;

  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double lo = grid[j], hi = grid[j + 1];
    // stay strictly inside so jumps at the edges take this interval's value
    const double a = std::nextafter(lo, hi), b = std::nextafter(hi, lo);
    const int m = 16;
    for (int i = 0; i < m; ++i) {
      const double l = a + (b - a) * i / m, r = a + (b - a) * (i + 1) / m;
      sum += adaptive_simpson<double>(
          [&](double t) { return g(t).dot(pa.position(t) - pb.position(t)); }, l, r,
          0.1 * cfg.abs_tol * scale / (m * grid.size()));
    }
  }
  return seq.params().mass() / seq.params().hbar() * sum;
}

Vec3 event_area(const InterferometerSequence& seq) {
  const double T = seq.T();
  Vec3 area = Vec3::Zero();
  for (const ArmTimeline* arm : {&seq.arm_a(), &seq.arm_b()}) {
    const double sign = arm == &seq.arm_a() ? 1.0 : -1.0;
    Vec3 a = arm->initial_position() * (2.0 * T) + arm->initial_velocity() * (2.0 * T * T);
    for (const auto& k : arm->kicks()) {
      const double d = T - k.time.seconds();
      a += k.dv * (0.5 * d * d);
    }
    for (const auto& s : arm->segments()) {
      const double ds = T - s.start.seconds(), de = T - s.end.seconds();
      a += s.accel * ((ds * ds * ds - de * de * de) / 6.0);
    }
    area += sign * a;
  }
  return area;
}

KicktrainReport kicktrain_equivalence(const InterferometerSequence& continuous,
                                      const InterferometerSequence& kicktrain,
                                      const OracleConfig& cfg) {
  KicktrainReport r;
  r.area_continuous = event_area(continuous);
  r.area_kicktrain = event_area(kicktrain);
  const double denom = std::max(r.area_continuous.norm(), r.area_kicktrain.norm());
  r.area_rel_diff = denom > 0.0 ? (r.area_continuous - r.area_kicktrain).norm() / denom : 0.0;
  r.area_equal = r.area_rel_diff <= 1e-12;
  r.phase_continuous = action_phase(continuous, cfg);
  r.phase_kicktrain = action_phase(kicktrain, cfg);
  r.phase_diff = r.phase_kicktrain - r.phase_continuous;
  return r;
}

double sagnac_oracle(const InterferometerSequence& seq, const Vec3& omega, const OracleConfig& cfg) {
  check_config(cfg);
  if (omega.isZero(0.0)) return 0.0;
  const EventPath pa(seq.arm_a(), seq), pb(seq.arm_b(), seq);
  const auto grid = oracle_grid(seq);
  const Vec3 g = seq.gravity();
  const auto gf = [g](double) { return g; };
  const auto integrand = [&](const NodeState& s) {
    const Vec3 ra = pa.position(s.t) + s.xg, rb = pb.position(s.t) + s.xg;
    const Vec3 va = pa.velocity(s.t, s.after) + s.vg, vb = pb.velocity(s.t, s.after) + s.vg;
    return omega.dot((ra - rb).cross(va) + rb.cross(va - vb));
  };
  const int n = cfg.points_per_interval + cfg.points_per_interval % 2;
  const auto coarse = simpson_on_grid(grid, n, gf, pa, pb, integrand);
  const auto fine = simpson_on_grid(grid, 2 * n, gf, pa, pb, integrand);
  const double m_hbar = seq.params().mass() / seq.params().hbar();
  return m_hbar * richardson(coarse.value, fine.value, fine.magnitude, cfg, "sagnac_oracle");
}

OracleReport compare(std::string case_id, double analytic, double oracle, double rel_tol,
                     double abs_floor) {
  OracleReport r;
  r.case_id = std::move(case_id);
  r.analytic = analytic;
  r.oracle = oracle;
  r.abs_err = std::abs(analytic - oracle);
  r.rel_err = oracle != 0.0 ? r.abs_err / std::abs(oracle)
                            : (r.abs_err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  r.pass = std::isfinite(r.abs_err) && r.abs_err <= std::max(rel_tol * std::abs(oracle), abs_floor);
  return r;
}

std::string to_kv(const OracleReport& r) {
  char buf[64];
  std::ostringstream os;
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "case_id=" << r.case_id << '\n'
     << "analytic=" << num(r.analytic) << '\n'
     << "oracle=" << num(r.oracle) << '\n'
     << "abs_err=" << num(r.abs_err) << '\n'
     << "rel_err=" << num(r.rel_err) << '\n'
     << "verdict=" << (r.pass ? "PASS" : "FAIL") << "\n\n";
  return os.str();
}

}  // namespace stalab
