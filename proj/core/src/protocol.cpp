#include "trilocc/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace trilocc {

namespace {

// out = (I (x) B^dagger (x) I) a, applying the basis change on party j.
cvec apply_local_adjoint(const cvec& a, const PartySignature& sig, int party,
                         const cmat& basis) {
  long before = 1, after = 1;
  for (int j = 0; j < party; ++j) before *= sig.dims[j];
  for (int j = party + 1; j < sig.parties(); ++j) after *= sig.dims[j];
  const long d = sig.dims[party];

  cvec out(a.size());
  for (long u = 0; u < before; ++u) {
    for (long w = 0; w < after; ++w) {
      const long base = u * d * after + w;
      for (long k = 0; k < d; ++k) {
        cplx acc = 0.0;
        for (long i = 0; i < d; ++i) acc += std::conj(basis(i, k)) * a(base + i * after);
        out(base + k * after) = acc;
      }
    }
  }
  return out;
}

void check_basis_compat(const MultipartiteState& s, const LocalBasisSet& bases,
                        long dim_cap) {
  if (s.signature != bases.signature)
    throw DimensionError("state and measurement bases have different signatures");
  if (s.signature.total_dim() > dim_cap)
    throw PreconditionError("joint outcome space exceeds the simulator cap");
}

}  // namespace

LocalBasisSet complete_local_bases(const Witness& w) {
  const PartySignature& sig = w.phi.signature;
  std::vector<cmat> bases;
  bases.reserve(sig.parties());
  for (int j = 0; j < sig.parties(); ++j) {
    const long d = sig.dims[j];
    cmat b(d, d);
    b.col(0) = w.phi.locals[j];
    long filled = 1;
    for (long e = 0; e < d && filled < d; ++e) {
      cvec v = cvec::Zero(d);
      v(e) = 1.0;
      // Two Gram-Schmidt passes keep the columns orthonormal to machine
      // precision even for nearly dependent candidates.
      for (int pass = 0; pass < 2; ++pass) {
        for (long c = 0; c < filled; ++c) v -= b.col(c) * b.col(c).dot(v);
      }
      if (v.norm() > 1e-6) b.col(filled++) = v / v.norm();
    }
    if (filled != d)
      throw InternalContradiction("local basis completion ran out of candidates");
    bases.push_back(std::move(b));
  }
  return LocalBasisSet{sig, std::move(bases)};
}

std::vector<double> outcome_distribution(const MultipartiteState& s,
                                         const LocalBasisSet& bases, long dim_cap) {
  check_basis_compat(s, bases, dim_cap);
  cvec a = s.amps;
  for (int j = 0; j < s.signature.parties(); ++j)
    a = apply_local_adjoint(a, s.signature, j, bases.bases[j]);
  std::vector<double> probs(a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) probs[k] = std::norm(a(k));
  return probs;
}

std::vector<int> simulate_shot(const MultipartiteState& true_state,
                               const LocalBasisSet& bases, rng_t& rng, long dim_cap) {
  const std::vector<double> probs = outcome_distribution(true_state, bases, dim_cap);
  std::discrete_distribution<long> outcome(probs.begin(), probs.end());
  return decode_index(true_state.signature, outcome(rng));
}

ProtocolRunSummary run_protocol(const StateSet& s, const Witness& w, long shots,
                                rng_t& rng, long dim_cap) {
  if (shots < 0) throw PreconditionError("shot count must be nonnegative");
  if (!verify_witness(s, w.target, w.phi))
    throw PreconditionError("witness does not verify against this state set");

  const LocalBasisSet bases = complete_local_bases(w);
  std::vector<std::discrete_distribution<long>> outcome_dists;
  outcome_dists.reserve(s.size());
  for (int k = 0; k < s.size(); ++k) {
    const std::vector<double> probs = outcome_distribution(s.state(k), bases, dim_cap);
    outcome_dists.emplace_back(probs.begin(), probs.end());
  }

  std::vector<double> priors =
      s.priors ? *s.priors : std::vector<double>(s.size(), 1.0 / s.size());
  std::discrete_distribution<int> pick_state(priors.begin(), priors.end());

  ProtocolRunSummary sum;
  sum.shots = shots;
  sum.predicted_probability = w.success_probability;
  for (int k = 0; k < s.size(); ++k)
    sum.per_true_state.push_back(StateShotCounts{s.name(k), 0, 0});

  for (long shot = 0; shot < shots; ++shot) {
    const int k = pick_state(rng);
    ++sum.per_true_state[k].drawn;
    if (outcome_dists[k](rng) == 0) {  // all-zeros joint outcome
      ++sum.per_true_state[k].conclusive;
      if (k == w.target) {
        ++sum.conclusive_count;
      } else {
        ++sum.false_conclusive_count;
      }
    }
  }

  const long target_drawn = sum.per_true_state[w.target].drawn;
  sum.empirical_frequency =
      target_drawn > 0 ? static_cast<double>(sum.conclusive_count) / target_drawn : 0.0;
  return sum;
}

}  // namespace trilocc
