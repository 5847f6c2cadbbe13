#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stalab/kinematics.hpp"
#include "stalab/sequence.hpp"
#include "stalab/time.hpp"
#include "stalab/vec.hpp"

namespace stalab {

/// Phase contributions in radians, ΔΦ = (S_a - S_b)/hbar.
struct PhaseBreakdown {
  double separation = 0.0;
  double kinetic = 0.0;
  double inertial = 0.0;
  double laser = 0.0;
  double magnetic = 0.0;
  double offset = 0.0;
  double sagnac = 0.0;
  double total = 0.0;

  struct Flags {
    bool closed = false;
    bool velocity_sym_i = false;
    bool velocity_sym_ii = false;
    bool dx_symmetric = false;
    bool dx_antisymmetric = false;
    bool kinetic_cancelled = false;  ///< |ΔΦ_kin| <= 1e-12 of its scale
    bool zero_area_kick = false;
    bool sagnac_nonperturbative = false;
    bool sagnac_noncollinear = false;
  } flags;

  double sum() const { return separation + kinetic + inertial + laser + magnetic + offset + sagnac; }
};

/// Piecewise-constant B(t) and dipole moments on a shared grid spanning [-T, T].
struct MagneticSchedule {
  std::vector<Time> breaks;
  std::vector<Vec3> field;     ///< tesla
  std::vector<Vec3> moment_a;  ///< J/T
  std::vector<Vec3> moment_b;
};

/// Piecewise-constant, spatially uniform potential per arm (J).
struct OffsetSchedule {
  std::vector<Time> breaks;
  std::vector<double> potential_a;
  std::vector<double> potential_b;
};

/// Time-dependent background acceleration g(t) as a sum of terms. Polynomial
/// and trigonometric terms have closed forms; `sampled` terms do not and are
/// rejected by `inertial_phase_timevarying` (the oracle can still evaluate them).
class Waveform {
 public:
  struct Term {
    enum class Kind { Poly, Cos, Sin, Sampled };
    Kind kind = Kind::Poly;
    std::optional<Time> start;  ///< window, defaults to the whole sequence
    std::optional<Time> end;
    Vec3 c[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};  ///< poly in absolute t, or amplitude in c[0]
    double omega = 0.0;
    std::function<Vec3(double)> fn;
  };

  Waveform() = default;

  static Waveform constant(const Vec3& g);
  /// c0 + c1 t + c2 t^2 on [start, end].
  static Waveform polynomial(const Vec3& c0, const Vec3& c1, const Vec3& c2,
                             std::optional<Time> start = {}, std::optional<Time> end = {});
  static Waveform cosine(const Vec3& amplitude, double omega);
  static Waveform sine(const Vec3& amplitude, double omega);
  static Waveform sampled(std::function<Vec3(double)> fn);

  Waveform& operator+=(const Waveform& o);
  friend Waveform operator+(Waveform a, const Waveform& b) { return a += b; }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool has_closed_form() const;
  Vec3 operator()(double t) const;

 private:
  std::vector<Term> terms_;
};

/// a_c,j and a_s,j for j = 0..size-1 (a_s,0 is always zero).
struct FourierCoefficients {
  std::vector<Vec3> cos;
  std::vector<Vec3> sin;
};

/// Boundary term of the action. Closed sequences: (m/hbar)[ṽ_b·x_b - ṽ_a·x_a] at -T,
/// zero for equal initial states. Open sequences whose final velocities agree:
/// (k_e - k̃_i)·Δx_i, with Δx_i the separation the outputs must be displaced by
/// to overlap and k_e the momentum splitting of the first separating kick.
/// Throws NotInterfering when the final velocities differ.
double separation_phase(const InterferometerSequence& seq);

/// x_i·Δk for a cloud of initial position x_i split by momentum Δk.
double open_separation_phase(const Vec3& x_i, const Vec3& dk);
/// -k̃_i·Δx_i for equal initial wave vectors and an initial offset Δx_i.
double initial_offset_separation_phase(const Vec3& k_i, const Vec3& dx_i);

/// (m/2hbar) ∫ (ṽ_b² - ṽ_a²) dt, exact per interval.
double kinetic_phase(const InterferometerSequence& seq);
/// Same quantity as ω_rec ∫ (ñ_b² - ñ_a²) dt; equals kinetic_phase when all
/// motion is along k and v_i = 0.
double recoil_kinetic_phase(const InterferometerSequence& seq);

/// ∫ Δx̃ dt (m·s).
Vec3 space_time_area(const InterferometerSequence& seq);

/// (m/hbar) g·𝒜.
double inertial_phase(const InterferometerSequence& seq, const Vec3& g);
inline double inertial_phase(const InterferometerSequence& seq) {
  return inertial_phase(seq, seq.gravity());
}

/// (m/hbar) ∫ g(t)·Δx̃ dt in closed form. Throws UnsupportedWaveform for sampled terms.
double inertial_phase_timevarying(const InterferometerSequence& seq, const Waveform& g);

/// (m/hbar) Σ_j [a_c,j·𝒜_c(jπ/T) + a_s,j·𝒜_s(jπ/T)].
double fourier_phase(const InterferometerSequence& seq, const FourierCoefficients& coeffs);

/// a_c,j = (1/T)∫cos(jπt/T) g dt, a_s,j = (1/T)∫sin(jπt/T) g dt over [-T, T]; the
/// mean uses 1/2T. Integrated by composite Simpson, split at `breakpoints`.
FourierCoefficients fourier_coefficients(const std::function<Vec3(double)>& g, double T, int jmax,
                                         const std::vector<double>& breakpoints = {},
                                         int nodes_per_period = 64);

/// One arm's share of φ_L: Σ sign(Δv·k̂)|Δñ|/2·φ over kicks plus Δñ/2·φ_b over
/// laser-driven segments. `zero_area_kicks` counts laser kicks with Δv·k̂ = 0.
double arm_laser_phase(const ArmTimeline& arm, const PhysicalParams& params,
                       int* zero_area_kicks = nullptr);
/// Arm a kicks that raise k̂·𝒜 count positively, arm b negatively.
double laser_phase(const InterferometerSequence& seq);
int zero_area_kicks(const InterferometerSequence& seq);

/// (1/hbar) ∫ B·(μ_a - μ_b) dt.
double magnetic_phase(const MagneticSchedule& schedule, double hbar);
/// (1/hbar) ∫ (V_b - V_a) dt.
double offset_phase(const OffsetSchedule& schedule, double hbar);

/// (2m/hbar) Ω·A with A = 𝒜 × v_0 + (∫ t Δx̃ dt) × g and v_0 = v_i + gT the
/// common velocity at t = 0. Perturbative in Ω and exact for kicks along k.
double sagnac_phase(const InterferometerSequence& seq, const Vec3& omega);
inline double sagnac_phase(const InterferometerSequence& seq) {
  return sagnac_phase(seq, seq.rotation());
}
/// Vector area A entering the Sagnac term (m²).
Vec3 sagnac_area(const InterferometerSequence& seq);
/// Every kick, segment and arm velocity offset is along k.
bool is_collinear(const InterferometerSequence& seq);

struct PhaseOptions {
  std::optional<Waveform> gravity;  ///< replaces the sequence's constant g
  std::optional<MagneticSchedule> magnetic;
  std::optional<OffsetSchedule> offset;
  bool sagnac = true;
};

PhaseBreakdown total_phase(const InterferometerSequence& seq, const PhaseOptions& options = {});

/// `key=value` lines, 17 significant digits.
std::string to_kv(const PhaseBreakdown& p);
/// `term,radians` header plus one row per term.
std::string to_csv(const PhaseBreakdown& p);

}  // namespace stalab
