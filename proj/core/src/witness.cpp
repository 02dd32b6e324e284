#include "trilocc/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "trilocc/subspace.hpp"

namespace trilocc {

namespace {

// Plain (unconjugated) dot product; the constraint rows are pre-conjugated.
cplx plain_dot(const cvec& a, const cvec& b) { return a.cwiseProduct(b).sum(); }

std::pair<int, int> others(int target) {
  switch (target) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    case 2: return {0, 1};
  }
  throw DimensionError("target index must be 0, 1, or 2");
}

void check_target(const StateSet& s, int target) {
  if (target < 0 || target >= s.size()) throw DimensionError("target index out of range");
}

void require_trio(const StateSet& s, double tol) {
  if (s.size() != 3)
    throw PreconditionError("need exactly three states, got " + std::to_string(s.size()));
  if (!linearly_independent(s.state_vector(), tol))
    throw PreconditionError("the three states are linearly dependent at the working tolerance");
}

int party_with_dim_at_least_3(const PartySignature& sig) {
  for (int j = 0; j < sig.parties(); ++j) {
    if (sig.dims[j] >= 3) return j;
  }
  return -1;
}

std::vector<int> all_but(int parties, int exclude) {
  std::vector<int> out;
  out.reserve(parties - 1);
  for (int j = 0; j < parties; ++j) {
    if (j != exclude) out.push_back(j);
  }
  return out;
}

// Product state with `local` on one party and the probe's factors elsewhere.
ProductState assemble_around(const PartySignature& sig, int party, cvec local,
                             const ProductState& rest) {
  std::vector<cvec> locals(sig.parties());
  locals[party] = std::move(local);
  int t = 0;
  for (int j = 0; j < sig.parties(); ++j) {
    if (j != party) locals[j] = rest.locals[t++];
  }
  return make_product_state(sig, std::move(locals));
}

// One probe draw of the nullspace construction on `party`.  With pick_best
// the candidate maximizing the target overlap inside the nullspace is used
// instead of the first acceptable basis vector.  nullopt asks for a redraw.
std::optional<Witness> highdim_attempt(const StateSet& s, int target, int party,
                                       const ProductState& theta, bool pick_best) {
  const auto [i, j] = others(target);
  const int d = s.signature.dims[party];
  const cvec ri = condition_on(s.state(i), {party}, theta).conjugate();
  const cvec rj = condition_on(s.state(j), {party}, theta).conjugate();

  // The two constraint rows must be robustly independent so the nullspace
  // has exactly d - 2 dimensions; almost every probe achieves this.
  cmat rows(2, d);
  rows.row(0) = ri.transpose();
  rows.row(1) = rj.transpose();
  if (Eigen::JacobiSVD<cmat>(rows).singularValues().minCoeff() <= k_eps_zero)
    return std::nullopt;

  const cvec rx = condition_on(s.state(target), {party}, theta).conjugate();
  const std::vector<cvec> basis = nullspace_two_rows(ri, rj);

  std::optional<cvec> pick;
  if (!pick_best) {
    for (const cvec& b : basis) {
      if (std::abs(plain_dot(rx, b)) > k_eps_zero) {
        pick = b;
        break;
      }
    }
  }
  if (!pick) {
    // Projection of conj(rx) onto the nullspace maximizes |rx . x| there.
    cvec proj = cvec::Zero(d);
    for (const cvec& b : basis) proj += b * b.dot(rx.conjugate());
    if (proj.norm() > k_eps_zero) pick = proj.normalized();
  }
  if (!pick) return std::nullopt;

  ProductState phi = assemble_around(s.signature, party, std::move(*pick), theta);
  if (!verify_witness(s, target, phi, k_eps_zero)) return std::nullopt;
  const double p = std::norm(inner(s.state(target), embed(phi)));
  return Witness{target, std::move(phi), p};
}

StateSet merge_first_two(const StateSet& s) {
  std::vector<NamedState> merged;
  merged.reserve(s.states.size());
  for (const NamedState& ns : s.states)
    merged.push_back(NamedState{ns.name, merge_parties(ns.state, 0, 1)});
  PartySignature sig = merged.front().state.signature;
  return make_state_set(std::move(sig), std::move(merged), s.priors);
}

// Probe redraws per pipeline pass of the qubit-chain reduction.
constexpr int k_probe_retries = 4;

enum class AttemptOutcome { found, probe_failed, reduction_failed };

// One full pass of the qubit-chain reduction.  `preferred` drives the
// fused-party construction; accept_any additionally lets the two-qubit
// stage settle on one of the other states.
AttemptOutcome multiqubit_attempt(const StateSet& s, const StateSet& merged,
                                  int preferred, bool accept_any, rng_t& rng,
                                  SearchStats* stats, std::pair<int, Witness>* out) {
  Witness fused_witness;
  try {
    fused_witness = witness_highdim(merged, preferred, rng, k_probe_retries, stats);
  } catch (const SearchFailure&) {
    return AttemptOutcome::probe_failed;
  }

  const PartySignature two_qubits({2, 2});
  const MultipartiteState fused = make_state(two_qubits, fused_witness.phi.locals[0]);
  // The probe factors on parties 2..n-1 carry over verbatim.
  std::vector<int> tail_parties;
  for (int j = 2; j < s.signature.parties(); ++j) tail_parties.push_back(j);
  const ProductState omega = make_product_state(
      s.signature.sub(tail_parties),
      std::vector<cvec>(fused_witness.phi.locals.begin() + 1, fused_witness.phi.locals.end()));

  auto finish = [&](const ProductState& front, int target) -> bool {
    std::vector<cvec> locals = {front.locals[0], front.locals[1]};
    locals.insert(locals.end(), omega.locals.begin(), omega.locals.end());
    ProductState phi = make_product_state(s.signature, std::move(locals));
    if (!verify_witness(s, target, phi, k_eps_zero)) return false;
    const double p = std::norm(inner(s.state(target), embed(phi)));
    *out = {target, Witness{target, std::move(phi), p}};
    return true;
  };

  if (is_product_across(fused, {0})) {
    // The fused factor already splits across the first two qubits.
    if (finish(dominant_product_factor(fused), preferred)) return AttemptOutcome::found;
    return AttemptOutcome::reduction_failed;
  }

  // Entangled fused factor: condition every state on the tail probe and
  // solve the remaining genuine two-qubit problem.
  std::array<cvec, 3> v;
  for (int k = 0; k < 3; ++k) v[k] = condition_on(s.state(k), {0, 1}, omega);
  const auto [i, j] = others(preferred);
  if (v[preferred].norm() <= k_eps_zero) return AttemptOutcome::reduction_failed;

  cmat pair_cols(4, 2);
  pair_cols.col(0) = v[i];
  pair_cols.col(1) = v[j];
  Eigen::JacobiSVD<cmat> pair_svd(pair_cols, Eigen::ComputeFullU);
  const double s1 = pair_svd.singularValues()(0);
  const double s2 = pair_svd.singularValues()(1);

  if (s1 <= k_eps_zero) {
    // Both orthogonality constraints vanish under this probe: the closest
    // product state to the target's conditioned vector settles it.
    const ProductState front = dominant_product_factor(make_state(two_qubits, v[preferred]));
    if (finish(front, preferred)) return AttemptOutcome::found;
    return AttemptOutcome::reduction_failed;
  }

  if (s2 <= k_eps_zero * s1) {
    // One effective constraint: hunt product states in the orthocomplement
    // of the shared direction, plane by plane.
    const MultipartiteState vx = make_state(two_qubits, v[preferred]);
    const MultipartiteState shared{two_qubits, pair_svd.matrixU().col(0)};
    const std::vector<MultipartiteState> basis = orthogonal_complement({shared});
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = a + 1; b < basis.size(); ++b) {
        const PlaneProductResult plane = product_states_in_plane(basis[a], basis[b]);
        if (plane.kind == PlaneProductResult::Kind::discrete) {
          for (const ProductState& m : plane.members) {
            if (std::abs(inner(vx, embed(m))) <= k_eps_zero) continue;
            if (finish(m, preferred)) return AttemptOutcome::found;
          }
        } else {
          const cplx ca = inner(basis[a], vx);
          const cplx cb = inner(basis[b], vx);
          cvec proj = ca * basis[a].amps + cb * basis[b].amps;
          if (proj.norm() <= k_eps_zero) continue;
          const ProductState m = dominant_product_factor(make_state(two_qubits, std::move(proj)));
          if (finish(m, preferred)) return AttemptOutcome::found;
        }
      }
    }
    return AttemptOutcome::reduction_failed;
  }

  // Generic reduction: three independent conditioned states on two qubits.
  try {
    std::vector<NamedState> named;
    for (int k = 0; k < 3; ++k)
      named.push_back(NamedState{s.name(k), make_state(two_qubits, v[k])});
    const StateSet vset = make_state_set(two_qubits, std::move(named));
    std::vector<int> order{preferred};
    if (accept_any) {
      for (int t = 0; t < 3; ++t) {
        if (t != preferred) order.push_back(t);
      }
    }
    for (int t : order) {
      const std::optional<Witness> w2 = witness_two_qubit(vset, t);
      if (!w2) continue;
      if (finish(w2->phi, t)) return AttemptOutcome::found;
    }
  } catch (const PreconditionError&) {
    // Conditioned triple (nearly) dependent under this probe; redraw.
  }
  return AttemptOutcome::reduction_failed;
}

void require_qubit_chain(const StateSet& s) {
  for (int d : s.signature.dims) {
    if (d != 2) throw PreconditionError("every party must be a qubit");
  }
  if (s.signature.parties() < 3)
    throw PreconditionError("need at least three qubits; two qubits have an exact decision");
}

}  // namespace

bool verify_witness(const StateSet& s, int target, const ProductState& phi, double tol) {
  if (phi.signature != s.signature) throw DimensionError("witness signature does not match the set");
  check_target(s, target);
  const MultipartiteState e = embed(phi);
  for (int i = 0; i < s.size(); ++i) {
    const double ov = std::abs(inner(s.state(i), e));
    if (i == target ? ov <= tol : ov > tol) return false;
  }
  return true;
}

Witness witness_highdim(const StateSet& s, int target, rng_t& rng, int retries,
                        SearchStats* stats) {
  check_target(s, target);
  require_trio(s, k_eps_zero);
  const int party = party_with_dim_at_least_3(s.signature);
  if (party < 0) throw PreconditionError("no party has local dimension >= 3");

  const PartySignature rest_sig = s.signature.sub(all_but(s.signature.parties(), party));
  for (int attempt = 0; attempt < retries; ++attempt) {
    const ProductState theta = haar_product_state(rest_sig, rng);
    if (stats) ++stats->theta_draws;
    if (std::optional<Witness> w = highdim_attempt(s, target, party, theta, false))
      return std::move(*w);
  }
  throw SearchFailure("no product witness found after " + std::to_string(retries) +
                      " probe draws");
}

std::optional<Witness> witness_two_qubit(const StateSet& s, int target) {
  if (s.signature.dims != std::vector<int>{2, 2})
    throw DimensionError("two-qubit decision needs the [2, 2] signature");
  check_target(s, target);
  require_trio(s, k_eps_zero);

  const auto [i, j] = others(target);
  const std::vector<MultipartiteState> plane =
      orthogonal_complement({s.state(i), s.state(j)});
  const PlaneProductResult found = product_states_in_plane(plane[0], plane[1]);

  ProductState phi;
  if (found.kind == PlaneProductResult::Kind::discrete) {
    double best = 0.0;
    const ProductState* best_member = nullptr;
    for (const ProductState& m : found.members) {
      const double ov = std::abs(inner(s.state(target), embed(m)));
      if (ov > best) {
        best = ov;
        best_member = &m;
      }
    }
    // The members exhaust the plane's product states, so no overlap here is
    // a certificate that the target has no witness at all.
    if (!best_member || best <= k_eps_zero) return std::nullopt;
    phi = *best_member;
  } else {
    // The whole plane is product: the target's projection into it is itself
    // (the best) witness.
    const cplx cu = inner(plane[0], s.state(target));
    const cplx cv = inner(plane[1], s.state(target));
    cvec proj = cu * plane[0].amps + cv * plane[1].amps;
    if (proj.norm() <= k_eps_zero)
      throw InternalContradiction("independent target orthogonal to its complement plane");
    phi = dominant_product_factor(make_state(s.signature, std::move(proj)));
  }

  if (!verify_witness(s, target, phi, k_eps_zero))
    throw InternalContradiction("constructed two-qubit witness failed verification");
  const double p = std::norm(inner(s.state(target), embed(phi)));
  return Witness{target, std::move(phi), p};
}

std::pair<int, Witness> witness_multiqubit(const StateSet& s, rng_t& rng, int retries,
                                           SearchStats* stats) {
  require_qubit_chain(s);
  require_trio(s, k_eps_zero);
  const StateSet merged = merge_first_two(s);

  bool reached_reduction = false;
  for (int attempt = 0; attempt < retries; ++attempt) {
    if (stats) ++stats->pipeline_restarts;
    std::pair<int, Witness> out;
    switch (multiqubit_attempt(s, merged, 2, true, rng, stats, &out)) {
      case AttemptOutcome::found:
        return out;
      case AttemptOutcome::reduction_failed:
        reached_reduction = true;
        break;
      case AttemptOutcome::probe_failed:
        break;
    }
  }
  if (reached_reduction)
    throw InternalContradiction(
        "qubit-chain reduction found no witness for any target across all restarts");
  throw SearchFailure("fused-party probe search failed on every restart");
}

std::optional<Witness> witness_multiqubit_targeted(const StateSet& s, int target,
                                                   rng_t& rng, int retries,
                                                   SearchStats* stats) {
  require_qubit_chain(s);
  check_target(s, target);
  require_trio(s, k_eps_zero);
  const StateSet merged = merge_first_two(s);

  for (int attempt = 0; attempt < retries; ++attempt) {
    if (stats) ++stats->pipeline_restarts;
    std::pair<int, Witness> out;
    if (multiqubit_attempt(s, merged, target, false, rng, stats, &out) ==
        AttemptOutcome::found)
      return std::move(out.second);
  }
  return std::nullopt;
}

ClassificationReport classify(const StateSet& s, const ClassifyOptions& opt) {
  if (s.size() != 3)
    throw PreconditionError("classification needs exactly three states, got " +
                            std::to_string(s.size()));
  if (!linearly_independent(s.state_vector(), opt.tol))
    throw PreconditionError("the three states are linearly dependent at the requested tolerance");

  rng_t rng(opt.seed);
  ClassificationReport rep;
  rep.seed = opt.seed;
  rep.tol = opt.tol;
  rep.retries = opt.retries;
  rep.per_state.assign(3, StateVerdict{});

  if (party_with_dim_at_least_3(s.signature) >= 0) {
    // Some local dimension >= 3: every state is identifiable.
    for (int x = 0; x < 3; ++x) {
      Witness w = witness_highdim(s, x, rng, opt.retries, &rep.stats);
      rep.per_state[x] = StateVerdict{StateVerdictKind::identifiable, std::move(w)};
    }
  } else if (s.signature.parties() == 2) {
    // Two qubits: exact decision in both directions.
    for (int x = 0; x < 3; ++x) {
      std::optional<Witness> w = witness_two_qubit(s, x);
      rep.per_state[x] =
          w ? StateVerdict{StateVerdictKind::identifiable, std::move(w)}
            : StateVerdict{StateVerdictKind::certified_not_identifiable, std::nullopt};
    }
  } else {
    // Qubit chains: one guaranteed identification, targeted searches for the
    // rest; failures stay undecided (no certificate of absence here).
    std::pair<int, Witness> found = witness_multiqubit(s, rng, opt.retries, &rep.stats);
    rep.per_state[found.first] =
        StateVerdict{StateVerdictKind::identifiable, std::move(found.second)};
    for (int x = 0; x < 3; ++x) {
      if (rep.per_state[x].kind == StateVerdictKind::identifiable) continue;
      std::optional<Witness> w =
          witness_multiqubit_targeted(s, x, rng, opt.retries, &rep.stats);
      if (w) rep.per_state[x] = StateVerdict{StateVerdictKind::identifiable, std::move(w)};
    }
  }

  bool all_identifiable = true;
  bool any_certified_not = false;
  for (const StateVerdict& v : rep.per_state) {
    all_identifiable &= v.kind == StateVerdictKind::identifiable;
    any_certified_not |= v.kind == StateVerdictKind::certified_not_identifiable;
  }
  rep.set_verdict = all_identifiable ? SetVerdict::conclusively_locally_distinguishable
                    : any_certified_not ? SetVerdict::not_conclusively_distinguishable
                                        : SetVerdict::partially_decided;
  return rep;
}

Witness maximize_success(const StateSet& s, int target, int restarts, rng_t& rng) {
  check_target(s, target);
  require_trio(s, k_eps_zero);
  if (restarts < 1) throw PreconditionError("restarts must be at least 1");

  std::optional<Witness> best;
  auto consider = [&best](std::optional<Witness> w) {
    if (w && (!best || w->success_probability > best->success_probability))
      best = std::move(w);
  };

  const int party = party_with_dim_at_least_3(s.signature);
  if (party >= 0) {
    try {
      consider(witness_highdim(s, target, rng, 16));
    } catch (const SearchFailure&) {
    }
    const PartySignature rest_sig = s.signature.sub(all_but(s.signature.parties(), party));
    for (int r = 1; r < restarts; ++r)
      consider(highdim_attempt(s, target, party, haar_product_state(rest_sig, rng), true));
  } else if (s.signature.parties() == 2) {
    // The enumeration is exhaustive and already overlap-maximizing, so one
    // deterministic call settles it either way.
    std::optional<Witness> w = witness_two_qubit(s, target);
    if (!w) throw PreconditionError("target is certifiably not identifiable");
    consider(std::move(w));
  } else {
    consider(witness_multiqubit_targeted(s, target, rng, 16));
    for (int r = 1; r < restarts; ++r)
      consider(witness_multiqubit_targeted(s, target, rng, 1));
  }

  if (!best) throw SearchFailure("no witness found for the target across all restarts");
  return *best;
}

}  // namespace trilocc
