#include "stalab/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "stalab/errors.hpp"

namespace stalab {
namespace {

std::vector<ImpulseKick> merge_kicks(std::vector<ImpulseKick> kicks) {
  for (const auto& k : kicks) {
    if (!k.dv.allFinite() || !std::isfinite(k.phase))
      throw InvalidArgument("kick at " + k.time.to_string() + " is not finite");
  }
  std::stable_sort(kicks.begin(), kicks.end(),
                   [](const ImpulseKick& l, const ImpulseKick& r) { return l.time < r.time; });

  std::vector<ImpulseKick> merged;
  for (std::size_t i = 0; i < kicks.size();) {
    std::size_t j = i;
    ImpulseKick sum{kicks[i].time, Vec3::Zero(), 0.0, 0};
    double weighted_phase = 0.0;
    for (; j < kicks.size() && kicks[j].time == kicks[i].time; ++j) {
      sum.dv += kicks[j].dv;
      sum.recoils += kicks[j].recoils;
      weighted_phase += kicks[j].recoils * kicks[j].phase;
    }
    if (j - i == 1) {
      sum.phase = kicks[i].phase;
    } else if (sum.recoils != 0) {
      // keeps sum of recoils * phase, i.e. the imprinted laser phase
      sum.phase = weighted_phase / sum.recoils;
    } else if (weighted_phase != 0.0) {
      throw InvalidArgument("simultaneous kicks at " + kicks[i].time.to_string() +
                            " cancel in recoil count but carry a net laser phase");
    }
    merged.push_back(sum);
    i = j;
  }
  return merged;
}

std::vector<AccelSegment> check_segments(std::vector<AccelSegment> segs) {
  for (const auto& s : segs) {
    if (!(s.start < s.end))
      throw InvalidArgument("segment must have start < end (" + s.start.to_string() + ")");
    if (!s.accel.allFinite() || !std::isfinite(s.phase))
      throw InvalidArgument("segment at " + s.start.to_string() + " is not finite");
    if (s.bloch_period && !(*s.bloch_period > 0.0))
      throw InvalidArgument("Bloch period must be positive");
  }
  std::stable_sort(segs.begin(), segs.end(),
                   [](const AccelSegment& l, const AccelSegment& r) { return l.start < r.start; });
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].start < segs[i - 1].end)
      throw OverlappingSegments("segments starting at " + segs[i - 1].start.to_string() + " and " +
                                segs[i].start.to_string() + " overlap");
  }
  return segs;
}

}  // namespace

ArmTimeline::ArmTimeline(Arm label, Vec3 initial_position, Vec3 initial_velocity,
                         std::vector<ImpulseKick> kicks, std::vector<AccelSegment> segments)
    : label_(label),
      x0_(std::move(initial_position)),
      v0_(std::move(initial_velocity)),
      kicks_(merge_kicks(std::move(kicks))),
      segments_(check_segments(std::move(segments))) {
  if (!x0_.allFinite() || !v0_.allFinite())
    throw InvalidArgument("arm initial state is not finite");
}

ArmTimeline::ArmTimeline(Arm label)
    : ArmTimeline(label, Vec3::Zero(), Vec3::Zero(), {}, {}) {}

ArmTimeline ArmTimeline::relabeled(Arm label) const {
  ArmTimeline copy = *this;
  copy.label_ = label;
  return copy;
}

ArmTimeline ArmTimeline::translated(const Vec3& offset) const {
  ArmTimeline copy = *this;
  copy.x0_ += offset;
  return copy;
}

std::optional<std::pair<Time, Time>> ArmTimeline::event_span() const {
  std::optional<std::pair<Time, Time>> span;
  auto include = [&span](Time lo, Time hi) {
    if (!span) {
      span = std::make_pair(lo, hi);
    } else {
      span->first = std::min(span->first, lo);
      span->second = std::max(span->second, hi);
    }
  };
  for (const auto& k : kicks_) include(k.time, k.time);
  for (const auto& s : segments_) include(s.start, s.end);
  return span;
}

InterferometerSequence::InterferometerSequence(PhysicalParams params, Time half_duration,
                                               ArmTimeline arm_a, ArmTimeline arm_b, Vec3 gravity,
                                               Vec3 rotation, Vec3 initial_velocity)
    : params_(std::move(params)),
      half_(half_duration),
      a_(arm_a.relabeled(Arm::A)),
      b_(arm_b.relabeled(Arm::B)),
      g_(std::move(gravity)),
      omega_(std::move(rotation)),
      vi_(std::move(initial_velocity)) {
  if (!(half_ > Time{})) throw InvalidArgument("half-duration T must be positive");
  if (!g_.allFinite() || !omega_.allFinite() || !vi_.allFinite())
    throw InvalidArgument("g, Omega and v_i must be finite");
  for (const ArmTimeline* arm : {&a_, &b_}) {
    if (auto span = arm->event_span()) {
      if (span->first < -half_ || span->second > half_)
        throw InvalidArgument(std::string("arm ") + to_string(arm->label()) +
                              " has events outside [-T, T]");
    }
  }
}

InterferometerSequence InterferometerSequence::with_arms_swapped() const {
  return InterferometerSequence(params_, half_, b_, a_, g_, omega_, vi_);
}

InterferometerSequence InterferometerSequence::with_gravity(const Vec3& g) const {
  return InterferometerSequence(params_, half_, a_, b_, g, omega_, vi_);
}

InterferometerSequence InterferometerSequence::with_rotation(const Vec3& omega) const {
  return InterferometerSequence(params_, half_, a_, b_, g_, omega, vi_);
}

InterferometerSequence InterferometerSequence::with_initial_velocity(const Vec3& vi) const {
  return InterferometerSequence(params_, half_, a_, b_, g_, omega_, vi);
}

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::VelocitySymmetric: return "velocity-sym-i";
    case Symmetry::VelocityAntisymmetric: return "velocity-sym-ii";
    case Symmetry::SeparationSymmetric: return "dx-symmetric";
    case Symmetry::SeparationAntisymmetric: return "dx-antisymmetric";
  }
  return "?";
}

}  // namespace stalab
