#pragma once

#include <string>
#include <vector>

#include "trilocc/statecore.hpp"

namespace trilocc {

// A state set read from disk, together with the original norm of every
// amplitude vector (1.0 when the file was already normalized) so callers
// can report the silent renormalization.
struct LoadedStateSet {
  StateSet set;
  std::vector<double> rescales;
};

// File schema (strict JSON):
//   {
//     "dims":   [2, 2],
//     "states": [ {"name": "psi1", "amps": [[re, im], ...]}, ... ],
//     "priors": [0.5, 0.25, 0.25]          // optional
//   }
// Amplitude lists run in the fixed lexicographic index order (party 0
// slowest).  Every malformation raises ParseError naming the offending
// field; validity rules (normalization, priors) match make_state_set.
LoadedStateSet parse_state_set(const std::string& text,
                               const std::string& origin = "<string>");
LoadedStateSet load_state_set(const std::string& path);

}  // namespace trilocc
