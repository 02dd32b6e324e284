#pragma once

#include <vector>

#include "trilocc/sampling.hpp"
#include "trilocc/statecore.hpp"

namespace trilocc {

// Independent reference verdicts on witness existence, used to cross-check
// the constructive searches.
struct OracleVerdict {
  enum class Kind {
    exists_witness,   // at least one verified witness in hand
    certified_empty,  // exhaustive enumeration proves there is none
    not_found         // sampling budget exhausted without a hit
  };
  int target = -1;
  Kind kind = Kind::not_found;
  std::vector<ProductState> witnesses;
  long samples_tried = 0;
};

// Exhaustive two-qubit decision: enumerates every product state of the
// plane orthogonal to the non-target pair and keeps those overlapping the
// target.  certified_empty is only ever produced here.
OracleVerdict enumerate_witnesses_2x2(const StateSet& s, int target);

// Randomized search on any signature: Haar product samples, each refined by
// alternating per-party least-squares minimization of the non-target
// overlaps.  Absence of a hit is NOT a certificate.
OracleVerdict random_search_witness(const StateSet& s, int target, long samples,
                                    rng_t& rng, double tol = k_eps_zero);

}  // namespace trilocc
