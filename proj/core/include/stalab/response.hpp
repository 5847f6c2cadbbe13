#pragma once

#include <string>
#include <vector>

#include "stalab/kinematics.hpp"
#include "stalab/sequence.hpp"
#include "stalab/vec.hpp"

namespace stalab {

/// 𝒜_c(ω) = ∫cos(ωt)Δx̃ dt and 𝒜_s(ω) = ∫sin(ωt)Δx̃ dt (m·s).
struct Transfer {
  Vec3 cos = Vec3::Zero();
  Vec3 sin = Vec3::Zero();
};

/// Caches Δx̃ of one sequence for repeated evaluation over ω.
///
/// Ratios use the projection on k̂ when the sequence is collinear with k and
/// vector norms otherwise.
class TransferEvaluator {
 public:
  explicit TransferEvaluator(const InterferometerSequence& seq);

  Transfer at(double omega) const;
  const Vec3& area() const noexcept { return area_; }
  /// 𝒜* = ∫|Δx̃|dt.
  double abs_area() const noexcept { return abs_area_; }
  bool collinear() const noexcept { return collinear_; }

  /// |𝒜_c(ω)|/|𝒜|. Throws ZeroArea when |𝒜| <= 1e-12 𝒜*.
  double R(double omega) const;
  /// |𝒜_s(ω)|/𝒜*. Throws DegenerateSequence when Δx̃ ≡ 0.
  double Rstar(double omega) const;
  bool has_area() const;
  /// |v·k̂| for collinear sequences, |v| otherwise.
  double measure(const Vec3& v) const;

 private:
  Piecewise<Vec3> dx_;
  Vec3 k_hat_;
  bool collinear_;
  Vec3 area_;
  double abs_area_;
};

Transfer transfer(const InterferometerSequence& seq, double omega);
double sensitivity_R(const InterferometerSequence& seq, double omega);
double sensitivity_Rstar(const InterferometerSequence& seq, double omega);
/// Exact for collinear sequences (pieces split at the roots of Δx̃·k̂);
/// adaptive quadrature of |Δx̃| otherwise.
double abs_area(const InterferometerSequence& seq);

enum class GridScale { Linear, Log };

struct TransferFunctions {
  std::vector<double> omega;
  std::vector<Vec3> cos;
  std::vector<Vec3> sin;
  std::vector<double> R;      ///< NaN when 𝒜 = 0
  std::vector<double> Rstar;  ///< NaN when Δx̃ ≡ 0
  Vec3 area = Vec3::Zero();
  double abs_area = 0.0;
};

/// Tabulates the transfer functions on `points` grid values from omega_min to
/// omega_max inclusive. Log grids need omega_min > 0.
TransferFunctions response_curve(const InterferometerSequence& seq, double omega_min,
                                 double omega_max, int points, GridScale scale = GridScale::Linear);

/// omega,Ac_x,Ac_y,Ac_z,As_x,As_y,As_z,R,Rstar with 17 significant digits.
std::string to_csv(const TransferFunctions& tf);

}  // namespace stalab
