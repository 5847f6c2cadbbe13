#include "stalab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "stalab/errors.hpp"

namespace stalab {
namespace {

struct Paths {
  PiecewiseTrajectory a;
  PiecewiseTrajectory b;
  PathDifference diff;
};

Paths paths_of(const InterferometerSequence& seq) {
  Paths p{integrate_arm(seq.arm_a(), seq.params(), seq.half_duration(), seq.initial_velocity()),
          integrate_arm(seq.arm_b(), seq.params(), seq.half_duration(), seq.initial_velocity()),
          {}};
  p.diff = path_difference(p.a, p.b);
  return p;
}

// ∫ p·q over one interval for linear vector polynomials.
double dot_integral(const LocalPoly<Vec3>& p, const LocalPoly<Vec3>& q, double h) {
  return p.c0.dot(q.c0) * h + (p.c0.dot(q.c1) + p.c1.dot(q.c0)) * h * h / 2.0 +
         p.c1.dot(q.c1) * h * h * h / 3.0;
}

Piecewise<Vec3> sum(const Piecewise<Vec3>& a, const Piecewise<Vec3>& b) {
  const auto grid = merge_breaks(a.breaks(), b.breaks());
  const auto ra = a.refined(grid);
  const auto rb = b.refined(grid);
  std::vector<LocalPoly<Vec3>> out(ra.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ra.pieces()[i] + rb.pieces()[i];
  return Piecewise<Vec3>(grid, std::move(out));
}

// (1/2)∫(ṽ_b² - ṽ_a²), written as -(1/2)∫Δṽ·(ṽ_a + ṽ_b) to avoid cancelling v_i².
double half_velocity_square_difference(const Paths& p) {
  const auto s = sum(p.a.velocity, p.b.velocity).refined(p.diff.velocity.breaks());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    acc -= dot_integral(p.diff.velocity.pieces()[i], s.pieces()[i], s.width(i));
  return 0.5 * acc;
}

double velocity_scale(const Paths& p) {
  double s = std::max(p.diff.velocity_before_start.norm(), p.diff.velocity_after_end.norm());
  for (std::size_t i = 0; i < p.diff.velocity.size(); ++i) {
    const auto& q = p.diff.velocity.pieces()[i];
    s = std::max({s, q.c0.norm(), q(p.diff.velocity.width(i)).norm()});
  }
  return s;
}

double position_scale(const Paths& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.diff.position.size(); ++i) {
    const auto& q = p.diff.position.pieces()[i];
    const double h = p.diff.position.width(i);
    s = std::max({s, q.c0.norm(), q(h / 2).norm(), q(h).norm()});
  }
  return s;
}

bool closed(const Paths& p, double rel) {
  const Vec3 dx = p.diff.position.value(p.diff.position.end(), Side::Left);
  return dx.norm() <= rel * position_scale(p) &&
         p.diff.velocity_after_end.norm() <= rel * velocity_scale(p);
}

double separation(const InterferometerSequence& seq, const Paths& p) {
  const double m_hbar = seq.params().mass_over_hbar();
  if (p.diff.velocity_after_end.norm() > 1e-12 * velocity_scale(p))
    throw NotInterfering("final velocities differ by " +
                         std::to_string(p.diff.velocity_after_end.norm()) + " m/s");

  const Vec3 ki = m_hbar * p.diff.velocity_before_start;
  if (closed(p, 1e-12)) {
    // boundary at T vanishes; only the initial states can contribute
    const Vec3 xa = seq.arm_a().initial_position();
    const Vec3 xb = seq.arm_b().initial_position();
    return m_hbar * (p.b.velocity_before_start.dot(xb) - p.a.velocity_before_start.dot(xa));
  }

  const Vec3 dx_i = p.diff.position.pieces().front().c0 -
                    p.diff.position.value(p.diff.position.end(), Side::Left);
  Vec3 ke = ki;
  const double tol = 1e-12 * velocity_scale(p);
  for (const auto& piece : p.diff.velocity.pieces()) {
    if ((piece.c0 - p.diff.velocity_before_start).norm() > tol) {
      ke = m_hbar * piece.c0;
      break;
    }
  }
  return (ke - ki).dot(dx_i);
}

Piecewise<Vec3> restrict_to(const Piecewise<Vec3>& p, Time s, Time e) {
  s = std::max(s, p.start());
  e = std::min(e, p.end());
  const Time cut[2] = {s, e};
  const auto grid = merge_breaks(p.breaks(), cut);
  const auto r = p.refined(grid);
  std::vector<Time> breaks;
  std::vector<LocalPoly<Vec3>> pieces;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (grid[i] >= s && grid[i + 1] <= e) {
      if (breaks.empty()) breaks.push_back(grid[i]);
      breaks.push_back(grid[i + 1]);
      pieces.push_back(r.pieces()[i]);
    }
  }
  return Piecewise<Vec3>(std::move(breaks), std::move(pieces));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Waveform Waveform::constant(const Vec3& g) { return polynomial(g, Vec3::Zero(), Vec3::Zero()); }

Waveform Waveform::polynomial(const Vec3& c0, const Vec3& c1, const Vec3& c2,
                              std::optional<Time> start, std::optional<Time> end) {
  Waveform w;
  Term t;
  t.kind = Term::Kind::Poly;
  t.c[0] = c0;
  t.c[1] = c1;
  t.c[2] = c2;
  t.start = start;
  t.end = end;
  w.terms_.push_back(std::move(t));
  return w;
}

Waveform Waveform::cosine(const Vec3& amplitude, double omega) {
  Waveform w;
  Term t;
  t.kind = Term::Kind::Cos;
  t.c[0] = amplitude;
  t.omega = omega;
  w.terms_.push_back(std::move(t));
  return w;
}

Waveform Waveform::sine(const Vec3& amplitude, double omega) {
  Waveform w = cosine(amplitude, omega);
  w.terms_.front().kind = Term::Kind::Sin;
  return w;
}

Waveform Waveform::sampled(std::function<Vec3(double)> fn) {
  Waveform w;
  Term t;
  t.kind = Term::Kind::Sampled;
  t.fn = std::move(fn);
  w.terms_.push_back(std::move(t));
  return w;
}

Waveform& Waveform::operator+=(const Waveform& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

bool Waveform::has_closed_form() const {
  return std::none_of(terms_.begin(), terms_.end(),
                      [](const Term& t) { return t.kind == Term::Kind::Sampled; });
}

Vec3 Waveform::operator()(double t) const {
  Vec3 g = Vec3::Zero();
  for (const auto& term : terms_) {
    if (term.start && t < term.start->seconds()) continue;
    if (term.end && t > term.end->seconds()) continue;
    switch (term.kind) {
      case Term::Kind::Poly: g += term.c[0] + (term.c[1] + term.c[2] * t) * t; break;
      case Term::Kind::Cos: g += term.c[0] * std::cos(term.omega * t); break;
      case Term::Kind::Sin: g += term.c[0] * std::sin(term.omega * t); break;
      case Term::Kind::Sampled: g += term.fn(t); break;
    }
  }
  return g;
}

double separation_phase(const InterferometerSequence& seq) {
  return separation(seq, paths_of(seq));
}

double open_separation_phase(const Vec3& x_i, const Vec3& dk) { return x_i.dot(dk); }

double initial_offset_separation_phase(const Vec3& k_i, const Vec3& dx_i) { return -k_i.dot(dx_i); }

double kinetic_phase(const InterferometerSequence& seq) {
  return seq.params().mass_over_hbar() * half_velocity_square_difference(paths_of(seq));
}

double recoil_kinetic_phase(const InterferometerSequence& seq) {
  const auto p = paths_of(seq);
  const auto grid = merge_breaks(p.a.recoils.breaks(), p.b.recoils.breaks());
  const auto na = p.a.recoils.refined(grid);
  const auto nb = p.b.recoils.refined(grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < na.size(); ++i) {
    const double h = na.width(i);
    for (const auto* q : {&nb.pieces()[i], &na.pieces()[i]}) {
      const double s = q->c0 * q->c0 * h + q->c0 * q->c1 * h * h + q->c1 * q->c1 * h * h * h / 3.0;
      acc += (q == &nb.pieces()[i]) ? s : -s;
    }
  }
  return seq.params().recoil_frequency() * acc;
}

Vec3 space_time_area(const InterferometerSequence& seq) {
  return path_difference(seq).position.integral();
}

double inertial_phase(const InterferometerSequence& seq, const Vec3& g) {
  return seq.params().mass_over_hbar() * g.dot(space_time_area(seq));
}

double inertial_phase_timevarying(const InterferometerSequence& seq, const Waveform& g) {
  if (!g.has_closed_form())
    throw UnsupportedWaveform("g(t) has sampled terms; integrate it with the quadrature oracle");
  const auto dx = path_difference(seq).position;
  double acc = 0.0;
  for (const auto& term : g.terms()) {
    const Time s = term.start.value_or(dx.start());
    const Time e = term.end.value_or(dx.end());
    if (!(std::max(s, dx.start()) < std::min(e, dx.end()))) continue;
    const auto q = restrict_to(dx, s, e);
    switch (term.kind) {
      case Waveform::Term::Kind::Poly:
        for (std::size_t i = 0; i < q.size(); ++i) {
          const double h = q.width(i);
          const auto gl = LocalPoly<Vec3>{term.c[0], term.c[1], term.c[2]}.shifted(
              q.breaks()[i].seconds());
          const Vec3 gc[3] = {gl.c0, gl.c1, gl.c2};
          const auto& x = q.pieces()[i];
          const Vec3 xc[3] = {x.c0, x.c1, x.c2};
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              acc += gc[a].dot(xc[b]) * std::pow(h, a + b + 1) / (a + b + 1);
        }
        break;
      case Waveform::Term::Kind::Cos:
        acc += term.c[0].dot(trig_moments(q, term.omega).cos);
        break;
      case Waveform::Term::Kind::Sin:
        acc += term.c[0].dot(trig_moments(q, term.omega).sin);
        break;
      case Waveform::Term::Kind::Sampled:
        break;
    }
  }
  return seq.params().mass_over_hbar() * acc;
}

double fourier_phase(const InterferometerSequence& seq, const FourierCoefficients& coeffs) {
  const auto dx = path_difference(seq).position;
  const double T = seq.T();
  const std::size_t n = std::max(coeffs.cos.size(), coeffs.sin.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto m = trig_moments(dx, static_cast<double>(j) * M_PI / T);
    if (j < coeffs.cos.size()) acc += coeffs.cos[j].dot(m.cos);
    if (j < coeffs.sin.size()) acc += coeffs.sin[j].dot(m.sin);
  }
  return seq.params().mass_over_hbar() * acc;
}

FourierCoefficients fourier_coefficients(const std::function<Vec3(double)>& g, double T, int jmax,
                                         const std::vector<double>& breakpoints,
                                         int nodes_per_period) {
  if (!(T > 0.0) || jmax < 0 || nodes_per_period < 2)
    throw InvalidArgument("fourier_coefficients: need T > 0, jmax >= 0, nodes_per_period >= 2");
  std::vector<double> edges{-T, T};
  for (double b : breakpoints)
    if (b > -T && b < T) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  FourierCoefficients out;
  out.cos.assign(jmax + 1, Vec3::Zero());
  out.sin.assign(jmax + 1, Vec3::Zero());
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double lo = edges[e], hi = edges[e + 1];
    const double periods = std::max(1.0, jmax * (hi - lo) / (2.0 * T));
    int n = static_cast<int>(std::ceil(periods * nodes_per_period));
    n += n % 2;
    const double h = (hi - lo) / n;
    for (int i = 0; i <= n; ++i) {
      // sample just inside the interval so jumps at edges take the interval's value
      const double t = lo + i * h;
      const double ts = i == 0 ? std::nextafter(t, hi) : i == n ? std::nextafter(t, lo) : t;
      const double w = (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0)) * h / 3.0;
      const Vec3 gv = g(ts) * w;
      for (int j = 0; j <= jmax; ++j) {
        const double arg = j * M_PI * t / T;
        out.cos[j] += gv * std::cos(arg);
        out.sin[j] += gv * std::sin(arg);
      }
    }
  }
  out.cos[0] /= 2.0 * T;
  out.sin[0].setZero();
  for (int j = 1; j <= jmax; ++j) {
    out.cos[j] /= T;
    out.sin[j] /= T;
  }
  return out;
}

double arm_laser_phase(const ArmTimeline& arm, const PhysicalParams& params, int* zero_area_kicks) {
  const Vec3 k_hat = params.k_hat();
  double acc = 0.0;
  int zeros = 0;
  for (const auto& kick : arm.kicks()) {
    if (kick.recoils == 0) continue;
    const double along = kick.dv.dot(k_hat);
    if (along == 0.0) {
      ++zeros;
      continue;
    }
    acc += (along > 0 ? 1.0 : -1.0) * std::abs(kick.recoils) / 2.0 * kick.phase;
  }
  for (const auto& seg : arm.segments()) {
    if (!seg.laser_driven()) continue;
    const double dn = seg.accel.dot(k_hat) / params.photon_recoil_speed() * seg.duration();
    acc += dn / 2.0 * seg.phase;
  }
  if (zero_area_kicks) *zero_area_kicks += zeros;
  return acc;
}

double laser_phase(const InterferometerSequence& seq) {
  return arm_laser_phase(seq.arm_a(), seq.params()) - arm_laser_phase(seq.arm_b(), seq.params());
}

int zero_area_kicks(const InterferometerSequence& seq) {
  int n = 0;
  arm_laser_phase(seq.arm_a(), seq.params(), &n);
  arm_laser_phase(seq.arm_b(), seq.params(), &n);
  return n;
}

namespace {

template <typename F>
double step_integral(const std::vector<Time>& breaks, std::size_t values, F&& value) {
  if (breaks.size() != values + 1)
    throw InvalidArgument("schedule needs one value per interval between breakpoints");
  double acc = 0.0;
  for (std::size_t i = 0; i < values; ++i) {
    if (!(breaks[i] < breaks[i + 1])) throw InvalidArgument("schedule breakpoints must increase");
    acc += value(i) * (breaks[i + 1] - breaks[i]).seconds();
  }
  return acc;
}

}  // namespace

double magnetic_phase(const MagneticSchedule& s, double hbar) {
  if (s.moment_a.size() != s.field.size() || s.moment_b.size() != s.field.size())
    throw InvalidArgument("magnetic schedule vectors differ in length");
  return step_integral(s.breaks, s.field.size(),
                       [&](std::size_t i) { return s.field[i].dot(s.moment_a[i] - s.moment_b[i]); }) /
         hbar;
}

double offset_phase(const OffsetSchedule& s, double hbar) {
  if (s.potential_a.size() != s.potential_b.size())
    throw InvalidArgument("offset schedule vectors differ in length");
  return step_integral(s.breaks, s.potential_a.size(),
                       [&](std::size_t i) { return s.potential_b[i] - s.potential_a[i]; }) /
         hbar;
}

Vec3 sagnac_area(const InterferometerSequence& seq) {
  const auto dx = path_difference(seq).position;
  const Vec3 area = dx.integral();
  const Vec3 first = integrate_polynomial_moment(dx, Weight::linear());
  const Vec3 v0 = seq.initial_velocity() + seq.gravity() * seq.T();
  return area.cross(v0) + first.cross(seq.gravity());
}

double sagnac_phase(const InterferometerSequence& seq, const Vec3& omega) {
  if (omega.isZero(0.0)) return 0.0;
  return 2.0 * seq.params().mass_over_hbar() * omega.dot(sagnac_area(seq));
}

bool is_collinear(const InterferometerSequence& seq) {
  const Vec3 k = seq.params().k_hat();
  const auto along = [&k](const Vec3& v) { return k.cross(v).norm() <= 1e-12 * v.norm(); };
  for (const ArmTimeline* arm : {&seq.arm_a(), &seq.arm_b()}) {
    if (!along(arm->initial_velocity())) return false;
    for (const auto& kick : arm->kicks())
      if (!along(kick.dv)) return false;
    for (const auto& seg : arm->segments())
      if (!along(seg.accel)) return false;
  }
  return true;
}

PhaseBreakdown total_phase(const InterferometerSequence& seq, const PhaseOptions& options) {
  const auto p = paths_of(seq);
  const double m_hbar = seq.params().mass_over_hbar();
  const double hbar = seq.params().hbar();
  PhaseBreakdown out;

  out.flags.closed = closed(p, 1e-12);
  const auto sym = symmetry_class(seq);
  out.flags.velocity_sym_i = sym.count(Symmetry::VelocitySymmetric) > 0;
  out.flags.velocity_sym_ii = sym.count(Symmetry::VelocityAntisymmetric) > 0;
  out.flags.dx_symmetric = sym.count(Symmetry::SeparationSymmetric) > 0;
  out.flags.dx_antisymmetric = sym.count(Symmetry::SeparationAntisymmetric) > 0;

  out.separation = separation(seq, p);
  out.kinetic = m_hbar * half_velocity_square_difference(p);
  double kin_scale = 0.0;
  for (const auto* tr : {&p.a, &p.b})
    for (std::size_t i = 0; i < tr->velocity.size(); ++i)
      kin_scale += dot_integral(tr->velocity.pieces()[i], tr->velocity.pieces()[i],
                                tr->velocity.width(i));
  kin_scale *= 0.5 * m_hbar;
  out.flags.kinetic_cancelled = std::abs(out.kinetic) <= 1e-12 * kin_scale;

  if (options.gravity) {
    out.inertial = inertial_phase_timevarying(seq, *options.gravity);
  } else {
    out.inertial = m_hbar * seq.gravity().dot(p.diff.position.integral());
  }

  out.laser = laser_phase(seq);
  out.flags.zero_area_kick = zero_area_kicks(seq) > 0;

  const auto check_window = [&seq](const std::vector<Time>& breaks, const char* what) {
    if (breaks.empty() || breaks.front() != seq.start() || breaks.back() != seq.end())
      throw InvalidArgument(std::string(what) + " schedule must span [-T, T]");
  };
  if (options.magnetic) {
    check_window(options.magnetic->breaks, "magnetic");
    out.magnetic = magnetic_phase(*options.magnetic, hbar);
  }
  if (options.offset) {
    check_window(options.offset->breaks, "offset");
    out.offset = offset_phase(*options.offset, hbar);
  }
  if (options.sagnac && !seq.rotation().isZero(0.0)) {
    out.sagnac = sagnac_phase(seq);
    out.flags.sagnac_nonperturbative = seq.rotation().norm() * seq.T() > 1e-2;
    out.flags.sagnac_noncollinear = !is_collinear(seq);
  }
  out.total = out.sum();
  return out;
}

std::string to_kv(const PhaseBreakdown& p) {
  std::ostringstream os;
  os << "separation=" << fmt(p.separation) << '\n'
     << "kinetic=" << fmt(p.kinetic) << '\n'
     << "inertial=" << fmt(p.inertial) << '\n'
     << "laser=" << fmt(p.laser) << '\n'
     << "magnetic=" << fmt(p.magnetic) << '\n'
     << "offset=" << fmt(p.offset) << '\n'
     << "sagnac=" << fmt(p.sagnac) << '\n'
     << "total=" << fmt(p.total) << '\n';
  const auto& f = p.flags;
  os << "closed=" << f.closed << '\n'
     << "velocity_sym_i=" << f.velocity_sym_i << '\n'
     << "velocity_sym_ii=" << f.velocity_sym_ii << '\n'
     << "dx_symmetric=" << f.dx_symmetric << '\n'
     << "dx_antisymmetric=" << f.dx_antisymmetric << '\n'
     << "kinetic_cancelled=" << f.kinetic_cancelled << '\n'
     << "zero_area_kick=" << f.zero_area_kick << '\n'
     << "sagnac_nonperturbative=" << f.sagnac_nonperturbative << '\n'
     << "sagnac_noncollinear=" << f.sagnac_noncollinear << '\n';
  return os.str();
}

std::string to_csv(const PhaseBreakdown& p) {
  std::ostringstream os;
  os << "term,radians\n"
     << "separation," << fmt(p.separation) << '\n'
     << "kinetic," << fmt(p.kinetic) << '\n'
     << "inertial," << fmt(p.inertial) << '\n'
     << "laser," << fmt(p.laser) << '\n'
     << "magnetic," << fmt(p.magnetic) << '\n'
     << "offset," << fmt(p.offset) << '\n'
     << "sagnac," << fmt(p.sagnac) << '\n'
     << "total," << fmt(p.total) << '\n';
  return os.str();
}

}  // namespace stalab
