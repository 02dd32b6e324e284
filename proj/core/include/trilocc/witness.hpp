#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "trilocc/sampling.hpp"
#include "trilocc/statecore.hpp"

namespace trilocc {

// A product state that every non-target member of a set is orthogonal to
// while the target keeps a nonzero overlap.  A party that starts its local
// measurement with `phi`'s factor and sees it click learns, conclusively
// and by local means only, that the target was the state at hand;
// `success_probability` = |<target|phi>|^2 is how often that click happens.
struct Witness {
  int target = -1;
  ProductState phi;
  double success_probability = 0.0;
};

enum class StateVerdictKind {
  identifiable,               // witness in hand
  certified_not_identifiable, // exhaustive enumeration came up empty
  undecided                   // search exhausted without a certificate
};

enum class SetVerdict {
  conclusively_locally_distinguishable,  // every state identifiable
  not_conclusively_distinguishable,      // some state certified unidentifiable
  partially_decided                      // neither, due to undecided states
};

struct StateVerdict {
  StateVerdictKind kind = StateVerdictKind::undecided;
  std::optional<Witness> witness;
};

struct SearchStats {
  long theta_draws = 0;        // random product probes drawn
  long pipeline_restarts = 0;  // full qubit-chain reduction attempts
};

struct ClassificationReport {
  std::vector<StateVerdict> per_state;
  SetVerdict set_verdict = SetVerdict::partially_decided;
  std::uint64_t seed = 0;
  double tol = k_eps_zero;
  int retries = 16;
  SearchStats stats;
};

// True iff |<states[i]|phi>| <= tol for every i != target and
// |<target|phi>| > tol.
bool verify_witness(const StateSet& s, int target, const ProductState& phi,
                    double tol = k_eps_zero);

// Witness construction when some party has local dimension >= 3.  Draws a
// random product probe on the other parties, conditions the two non-target
// states down to that party's space, and picks a nullspace vector of the
// two resulting constraint rows that still overlaps the target's row.
// Succeeds for almost every probe; throws SearchFailure after `retries`
// failed draws.  The set must hold exactly 3 independent states.
Witness witness_highdim(const StateSet& s, int target, rng_t& rng,
                        int retries = 16, SearchStats* stats = nullptr);

// Exact decision for two qubits: enumerates the product states of the plane
// orthogonal to the two non-target states and keeps one overlapping the
// target.  nullopt is a certificate that no witness exists at all.
std::optional<Witness> witness_two_qubit(const StateSet& s, int target);

// Witness construction for >= 3 qubits: fuses qubits 0 and 1 into one
// 4-dimensional party, runs the high-dimensional construction there, then
// either splits the fused factor back into two qubit factors or conditions
// the set down to a fresh two-qubit problem.  Guaranteed to identify SOME
// state; returns its index with the witness.
std::pair<int, Witness> witness_multiqubit(const StateSet& s, rng_t& rng,
                                           int retries = 16,
                                           SearchStats* stats = nullptr);

// Same reduction pipeline, but only accepts witnesses for `target`;
// nullopt when the retry budget runs out (no certificate of absence).
std::optional<Witness> witness_multiqubit_targeted(const StateSet& s, int target,
                                                   rng_t& rng, int retries = 16,
                                                   SearchStats* stats = nullptr);

struct ClassifyOptions {
  double tol = k_eps_zero;
  std::uint64_t seed = 0;
  int retries = 16;
};

// Per-state verdicts for a set of exactly 3 linearly independent states,
// dispatching on the signature: some dimension >= 3 (all identifiable),
// [2, 2] (exact decision both ways), or all-qubit chains (one guaranteed
// identification, targeted searches for the rest).
ClassificationReport classify(const StateSet& s, const ClassifyOptions& opt = {});

// Best witness for `target` across `restarts` independent construction
// attempts; restarts = 1 reproduces the plain construction.  On [2, 2] the
// enumeration is already exhaustive, so the result is deterministic.
Witness maximize_success(const StateSet& s, int target, int restarts, rng_t& rng);

}  // namespace trilocc
