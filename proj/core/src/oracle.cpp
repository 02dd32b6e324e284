#include "trilocc/oracle.hpp"

#include <cmath>
#include <utility>

#include "trilocc/subspace.hpp"
#include "trilocc/witness.hpp"

namespace trilocc {

namespace {

std::pair<int, int> non_targets(int target) {
  switch (target) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    case 2: return {0, 1};
  }
  throw DimensionError("target index must be 0, 1, or 2");
}

constexpr int k_refine_iterations = 50;

// Alternating least squares: sweep the parties, each time replacing that
// party's factor by the direction minimizing the summed squared overlaps
// with the two non-target states (smallest eigenvector of the residual
// Gram accumulation).  Monotonically non-increasing residual.
ProductState refine_alternating(const StateSet& s, int target, ProductState phi) {
  const auto [i1, i2] = non_targets(target);
  const int parties = s.signature.parties();

  for (int it = 0; it < k_refine_iterations; ++it) {
    for (int j = 0; j < parties; ++j) {
      std::vector<int> rest;
      for (int p = 0; p < parties; ++p) {
        if (p != j) rest.push_back(p);
      }
      std::vector<cvec> rest_locals;
      for (int p : rest) rest_locals.push_back(phi.locals[p]);
      const ProductState probe =
          make_product_state(s.signature.sub(rest), std::move(rest_locals));
      // <state | phi> = <u | phi_j> with u the state conditioned on the
      // other factors, so party j's optimal factor is spectral.
      const cvec u1 = condition_on(s.state(i1), {j}, probe);
      const cvec u2 = condition_on(s.state(i2), {j}, probe);
      const cmat residual = u1 * u1.adjoint() + u2 * u2.adjoint();
      Eigen::SelfAdjointEigenSolver<cmat> es(residual);
      phi.locals[j] = es.eigenvectors().col(0);
    }
    const MultipartiteState e = embed(phi);
    const double residual = std::norm(inner(s.state(i1), e)) + std::norm(inner(s.state(i2), e));
    if (residual < 1e-24) break;
  }
  return phi;
}

}  // namespace

OracleVerdict enumerate_witnesses_2x2(const StateSet& s, int target) {
  if (s.signature.dims != std::vector<int>{2, 2})
    throw DimensionError("exhaustive enumeration needs the [2, 2] signature");
  if (target < 0 || target >= s.size()) throw DimensionError("target index out of range");
  if (s.size() != 3) throw PreconditionError("need exactly three states");
  if (!linearly_independent(s.state_vector()))
    throw PreconditionError("the three states are linearly dependent");

  const auto [i, j] = non_targets(target);
  const std::vector<MultipartiteState> plane =
      orthogonal_complement({s.state(i), s.state(j)});
  const PlaneProductResult found = product_states_in_plane(plane[0], plane[1]);

  OracleVerdict verdict;
  verdict.target = target;
  if (found.kind == PlaneProductResult::Kind::all_product) {
    // Every plane member is product; the target's projection overlaps it
    // (independence), so a witness certainly exists.
    const cplx cu = inner(plane[0], s.state(target));
    const cplx cv = inner(plane[1], s.state(target));
    cvec proj = cu * plane[0].amps + cv * plane[1].amps;
    if (proj.norm() <= k_eps_zero)
      throw InternalContradiction("independent target orthogonal to its complement plane");
    verdict.kind = OracleVerdict::Kind::exists_witness;
    verdict.witnesses.push_back(
        dominant_product_factor(make_state(s.signature, std::move(proj))));
    return verdict;
  }

  for (const ProductState& m : found.members) {
    if (std::abs(inner(s.state(target), embed(m))) > k_eps_zero)
      verdict.witnesses.push_back(m);
  }
  verdict.kind = verdict.witnesses.empty() ? OracleVerdict::Kind::certified_empty
                                           : OracleVerdict::Kind::exists_witness;
  return verdict;
}

OracleVerdict random_search_witness(const StateSet& s, int target, long samples,
                                    rng_t& rng, double tol) {
  if (target < 0 || target >= s.size()) throw DimensionError("target index out of range");
  if (s.size() != 3) throw PreconditionError("need exactly three states");
  if (samples < 0) throw PreconditionError("sample budget must be nonnegative");

  OracleVerdict verdict;
  verdict.target = target;
  for (long n = 1; n <= samples; ++n) {
    verdict.samples_tried = n;
    ProductState phi = haar_product_state(s.signature, rng);
    if (verify_witness(s, target, phi, tol)) {
      verdict.kind = OracleVerdict::Kind::exists_witness;
      verdict.witnesses.push_back(std::move(phi));
      return verdict;
    }
    ProductState refined = refine_alternating(s, target, std::move(phi));
    if (verify_witness(s, target, refined, tol)) {
      verdict.kind = OracleVerdict::Kind::exists_witness;
      verdict.witnesses.push_back(std::move(refined));
      return verdict;
    }
  }
  verdict.kind = OracleVerdict::Kind::not_found;
  return verdict;
}

}  // namespace trilocc
