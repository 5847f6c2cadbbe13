#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "stalab/sequence.hpp"

namespace stalab {

// Sequence documents are JSON, SI units, times in seconds:
//
//   {
//     "params": {"m": 1.443e-25, "hbar": 1.054571817e-34, "k": [0, 0, 8.055e6], "n": 1},
//     "T": 0.1,
//     "g": [0, 0, 9.8], "omega": [0, 0, 0], "v_i": [0, 0, 0],
//     "arms": {
//       "a": {"x0": [0, 0, 0], "v0": [0, 0, 0],
//             "kicks": [{"t": -0.1, "dv": [0, 0, 0.0117], "phi": 0, "dn": 2}],
//             "segments": [{"t_s": -0.09, "t_e": -0.05, "a": [0, 0, 1.2], "phi_b": 0, "tau_b": 0.001}]},
//       "b": {...}
//     }
//   }
//
// "g", "omega", "v_i", "x0", "v0", "kicks", "segments", "phi", "dn", "phi_b" and
// "tau_b" are optional. Unknown keys are rejected.

/// Throws ParseError naming the offending field as a JSON pointer.
InterferometerSequence parse_sequence(std::string_view text);
InterferometerSequence load_sequence(const std::filesystem::path& path);

/// Inverse of parse_sequence; doubles round-trip exactly.
std::string dump_sequence(const InterferometerSequence& seq);

}  // namespace stalab
