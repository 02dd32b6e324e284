#pragma once

// Shared generators for the test suites.

#include <string>
#include <vector>

#include "trilocc/sampling.hpp"
#include "trilocc/statecore.hpp"
#include "trilocc/subspace.hpp"

namespace testutil {

using namespace trilocc;

inline StateSet random_independent_triple(const PartySignature& sig, rng_t& rng) {
  while (true) {
    std::vector<NamedState> states;
    for (int k = 0; k < 3; ++k)
      states.push_back(NamedState{"s" + std::to_string(k + 1), haar_state(sig, rng)});
    StateSet s = make_state_set(sig, std::move(states));
    if (linearly_independent(s.state_vector())) return s;
  }
}

// Haar two-qubit states are entangled almost surely; resample the rare
// near-product draw so every member is robustly entangled.
inline StateSet random_entangled_triple(rng_t& rng) {
  while (true) {
    StateSet s = random_independent_triple(PartySignature({2, 2}), rng);
    bool all_entangled = true;
    for (int k = 0; k < 3; ++k)
      all_entangled = all_entangled && !is_product_across(s.state(k), {0}, 1e-6);
    if (all_entangled) return s;
  }
}

inline StateSet random_product_triple(rng_t& rng) {
  const PartySignature sig({2, 2});
  while (true) {
    std::vector<NamedState> states;
    for (int k = 0; k < 3; ++k)
      states.push_back(
          NamedState{"s" + std::to_string(k + 1), embed(haar_product_state(sig, rng))});
    StateSet s = make_state_set(sig, std::move(states));
    if (linearly_independent(s.state_vector())) return s;
  }
}

inline MultipartiteState two_qubit_state(double a00, double a01, double a10, double a11) {
  cvec amps(4);
  amps << a00, a01, a10, a11;
  return make_state(PartySignature({2, 2}), std::move(amps));
}

// Two orthogonal entangled states plus |01>; only |01> is identifiable.
inline StateSet asymmetric_triple() {
  return make_state_set(PartySignature({2, 2}),
                        {NamedState{"psi1", two_qubit_state(0.6, 0, 0, 0.8)},
                         NamedState{"psi2", two_qubit_state(0.8, 0, 0, -0.6)},
                         NamedState{"psi3", two_qubit_state(0, 1, 0, 0)}});
}

inline StateSet bell_triple() {
  return make_state_set(PartySignature({2, 2}),
                        {NamedState{"phi_plus", two_qubit_state(1, 0, 0, 1)},
                         NamedState{"phi_minus", two_qubit_state(1, 0, 0, -1)},
                         NamedState{"psi_plus", two_qubit_state(0, 1, 1, 0)}});
}

inline StateSet orthogonal_product_triple() {
  return make_state_set(PartySignature({2, 2}),
                        {NamedState{"zero_zero", two_qubit_state(1, 0, 0, 0)},
                         NamedState{"zero_one", two_qubit_state(0, 1, 0, 0)},
                         NamedState{"one_zero", two_qubit_state(0, 0, 1, 0)}});
}

}  // namespace testutil
