#pragma once

#include <string>
#include <vector>

#include "trilocc/sampling.hpp"
#include "trilocc/statecore.hpp"
#include "trilocc/witness.hpp"

namespace trilocc {

/// Joint outcome spaces larger than this are refused by the simulator.
inline constexpr long k_default_outcome_cap = 1L << 10;

// One orthonormal measurement basis per party; column 0 of every basis is
// the witness's local factor, so the all-zeros outcome is the conclusive
// "it was the target" event.
struct LocalBasisSet {
  PartySignature signature;
  std::vector<cmat> bases;
};

struct StateShotCounts {
  std::string name;
  long drawn = 0;       // shots where this state was the true one
  long conclusive = 0;  // of those, shots landing on the all-zeros outcome
};

struct ProtocolRunSummary {
  long shots = 0;
  long conclusive_count = 0;        // all-zeros outcomes with the target true
  long false_conclusive_count = 0;  // all-zeros outcomes with any other state
  double empirical_frequency = 0.0; // conclusive_count / target draws
  double predicted_probability = 0.0;
  std::vector<StateShotCounts> per_true_state;
};

// Completes each witness factor to an orthonormal local basis
// (Gram-Schmidt against the standard basis).
LocalBasisSet complete_local_bases(const Witness& w);

// Born-rule probabilities of every joint outcome, indexed like joint basis
// states.  Outcome spaces beyond `dim_cap` are a precondition error.
std::vector<double> outcome_distribution(const MultipartiteState& s,
                                         const LocalBasisSet& bases,
                                         long dim_cap = k_default_outcome_cap);

// Samples one joint outcome (a digit per party) when every party measures
// its basis on `true_state`.
std::vector<int> simulate_shot(const MultipartiteState& true_state,
                               const LocalBasisSet& bases, rng_t& rng,
                               long dim_cap = k_default_outcome_cap);

// Repeated protocol runs with the true state drawn from the set's priors
// (uniform when absent).  The witness must verify against the set.  The
// invariant false_conclusive_count == 0 is what "conclusive" means.
ProtocolRunSummary run_protocol(const StateSet& s, const Witness& w, long shots,
                                rng_t& rng, long dim_cap = k_default_outcome_cap);

}  // namespace trilocc
