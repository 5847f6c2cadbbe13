#pragma once

#include <random>

#include "stalab/params.hpp"
#include "stalab/sequence.hpp"

namespace stalab {

// Random sequences for property checks. Times are drawn on a 1 µs lattice so
// mirrored events coincide exactly.

struct RandomSequenceOptions {
  int max_kicks_per_arm = 4;
  int max_segments_per_arm = 2;
  bool random_gravity = true;
  bool random_initial_velocity = true;
};

/// Arbitrary kicks and segments along k on both arms, then two non-laser kicks
/// on arm b chosen so that both arms end with equal position and velocity.
InterferometerSequence random_closed_sequence(std::mt19937_64& rng,
                                              const RandomSequenceOptions& opts = {});

/// Arm b is the time mirror of arm a: ṽ_b(t) = ṽ_a(-t), or -ṽ_a(-t) when
/// `antisymmetric` (then v_i = 0).
InterferometerSequence random_mirrored_sequence(std::mt19937_64& rng, bool antisymmetric);

/// Arm b at rest; arm a shaped so that Δx̃(t) = Δx̃(-t), or -Δx̃(-t) when `antisymmetric`.
InterferometerSequence random_separation_symmetric_sequence(std::mt19937_64& rng,
                                                            bool antisymmetric);

}  // namespace stalab
