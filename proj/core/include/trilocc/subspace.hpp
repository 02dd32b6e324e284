#pragma once

#include <vector>

#include "trilocc/statecore.hpp"

namespace trilocc {

/// Relative threshold on the quadratic's coefficients (scaled by their
/// largest magnitude, floored at 1) below which they count as zero.
inline constexpr double k_eps_quad = 1e-10;
/// Chordal-metric radius inside which two projective roots are one root.
inline constexpr double k_eps_root = 1e-7;
/// Finite roots with |t| beyond this snap to the point at infinity.
inline constexpr double k_root_infinity = 1e8;

// Gram matrix G(i,j) = <states[i]|states[j]>; Hermitian positive
// semidefinite by construction.
cmat gram(const std::vector<MultipartiteState>& states);

// True iff the smallest Gram eigenvalue exceeds tol.
bool linearly_independent(const std::vector<MultipartiteState>& states,
                          double tol = k_eps_zero);

// Orthonormal basis of the orthogonal complement of span(states) inside the
// joint space.  Rank-deficient input (dependent states) is a precondition
// error, so the result always has total_dim - states.size() members.
std::vector<MultipartiteState> orthogonal_complement(
    const std::vector<MultipartiteState>& states, double tol = k_eps_zero);

// Orthonormal basis of { x : r1 . x = 0 and r2 . x = 0 } under the plain
// (unconjugated) dot product.  Conjugating the rows turns this into the
// usual kernel of constraints <conj(r_k)|x> = 0.
std::vector<cvec> nullspace_two_rows(const cvec& r1, const cvec& r2);

// Splits a two-qubit state into local factors via its dominant Schmidt pair.
// Exact when the state is product; otherwise the closest product state.
ProductState dominant_product_factor(const MultipartiteState& s);

// Product states inside the plane span{u, v} of a two-qubit space.  Members
// of the plane are u + t v up to scale; such a member is product exactly
// when a quadratic in t vanishes, so either the whole plane is product
// (identically zero quadratic) or there are one or two projective roots.
struct PlaneProductResult {
  enum class Kind { discrete, all_product };
  Kind kind = Kind::discrete;
  // One representative per distinct projective root; empty only for
  // all_product (where `members` lists no specific states).
  std::vector<ProductState> members;
  std::vector<cplx> finite_roots;  // parameters t of the finite members
  bool root_at_infinity = false;   // v itself (t = infinity) is a member
  MultipartiteState plane_u, plane_v;  // the orthonormal pair analyzed
};

// `u`, `v` must be an orthonormal pair of two-qubit states.
PlaneProductResult product_states_in_plane(const MultipartiteState& u,
                                           const MultipartiteState& v);

}  // namespace trilocc
