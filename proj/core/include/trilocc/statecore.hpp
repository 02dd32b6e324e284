#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trilocc/errors.hpp"

namespace trilocc {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

/// Normalization tolerance for stored states and for prior distributions.
inline constexpr double k_eps_norm = 1e-9;
/// Amplitude vectors with norm at or below this are rejected as zero.
inline constexpr double k_eps_degenerate = 1e-12;
/// Shared threshold for every orthogonal / non-orthogonal decision.
inline constexpr double k_eps_zero = 1e-9;

// Ordered local dimensions of a multipartite system.  Joint amplitudes are
// indexed lexicographically with party 0 varying slowest (row-major).
// Single-party signatures are allowed so probes and per-party factors can
// live on subsets of parties; state sets themselves must have >= 2 parties.
struct PartySignature {
  std::vector<int> dims;

  PartySignature() = default;
  explicit PartySignature(std::vector<int> d);

  int parties() const { return static_cast<int>(dims.size()); }
  long total_dim() const;
  bool operator==(const PartySignature& other) const { return dims == other.dims; }
  bool operator!=(const PartySignature& other) const { return !(*this == other); }

  // Sub-signature over a strictly increasing list of party indices.
  PartySignature sub(const std::vector<int>& parties_subset) const;
};

// Joint basis index <-> per-party digits, in the fixed lexicographic order.
std::vector<int> decode_index(const PartySignature& sig, long flat);
long encode_index(const PartySignature& sig, const std::vector<int>& digits);

// A unit-norm pure state of the joint system described by `signature`.
struct MultipartiteState {
  PartySignature signature;
  cvec amps;
};

// A fully product pure state, stored one unit-norm factor per party.
struct ProductState {
  PartySignature signature;
  std::vector<cvec> locals;
};

struct NamedState {
  std::string name;
  MultipartiteState state;
};

// A finite family of states of one shared signature, with optional priors.
struct StateSet {
  PartySignature signature;
  std::vector<NamedState> states;
  std::optional<std::vector<double>> priors;

  int size() const { return static_cast<int>(states.size()); }
  const MultipartiteState& state(int i) const { return states.at(i).state; }
  const std::string& name(int i) const { return states.at(i).name; }
  std::vector<MultipartiteState> state_vector() const;
};

// Normalizes `amps` and wraps it as a state.  A (near-)zero vector is a
// precondition error.  When `rescale` is given, the original norm is written
// there so callers can report the silent renormalization.
MultipartiteState make_state(PartySignature sig, cvec amps, double* rescale = nullptr);

// Normalizes each local factor; factor lengths must match the signature.
ProductState make_product_state(PartySignature sig, std::vector<cvec> locals);

// Validates shared signature, positive priors summing to one (when given).
StateSet make_state_set(PartySignature sig, std::vector<NamedState> states,
                        std::optional<std::vector<double>> priors = std::nullopt);

// Hermitian inner product <a|b>, conjugate-linear in `a`.
cplx inner(const MultipartiteState& a, const MultipartiteState& b);

// Expands a product state into joint amplitudes.
MultipartiteState embed(const ProductState& p);

// Fuses adjacent parties i and i+1 into one party of dimension d_i * d_{i+1}.
// With the fixed index order this changes no amplitude, only the signature.
MultipartiteState merge_parties(const MultipartiteState& s, int i, int j);

// Partial inner product against a product probe on the parties NOT in
// `kept` (strictly increasing, nonempty, proper subset).  The result v obeys
// <v|theta> = <s|theta (x) probe> for every state theta of the kept parties;
// it is generally subnormalized and can be zero.
cvec condition_on(const MultipartiteState& s, const std::vector<int>& kept,
                  const ProductState& probe);

// True when the state factorizes across the bipartition (side_a | rest):
// all singular values of the matricization beyond the largest are <= tol.
bool is_product_across(const MultipartiteState& s, const std::vector<int>& side_a,
                       double tol = k_eps_zero);

}  // namespace trilocc
