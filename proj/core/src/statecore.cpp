#include "trilocc/statecore.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

namespace trilocc {

PartySignature::PartySignature(std::vector<int> d) : dims(std::move(d)) {
  if (dims.empty()) throw DimensionError("signature needs at least one party");
  for (int dim : dims) {
    if (dim < 2) throw DimensionError("every local dimension must be at least 2");
  }
}

long PartySignature::total_dim() const {
  long n = 1;
  for (int d : dims) n *= d;
  return n;
}

namespace {

void check_party_subset(const PartySignature& sig, const std::vector<int>& parties,
                        const char* what) {
  if (parties.empty()) throw DimensionError(std::string(what) + ": empty party list");
  int prev = -1;
  for (int p : parties) {
    if (p <= prev) throw DimensionError(std::string(what) + ": party indices must be strictly increasing");
    if (p < 0 || p >= sig.parties()) throw DimensionError(std::string(what) + ": party index out of range");
    prev = p;
  }
}

std::vector<int> complement_parties(const PartySignature& sig, const std::vector<int>& parties) {
  std::vector<int> rest;
  std::size_t k = 0;
  for (int j = 0; j < sig.parties(); ++j) {
    if (k < parties.size() && parties[k] == j) {
      ++k;
    } else {
      rest.push_back(j);
    }
  }
  return rest;
}

// Advances mixed-radix digits by one step, last party fastest.
void advance_digits(std::vector<int>& digits, const std::vector<int>& dims) {
  for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
    if (++digits[j] < dims[j]) return;
    digits[j] = 0;
  }
}

}  // namespace

PartySignature PartySignature::sub(const std::vector<int>& parties_subset) const {
  check_party_subset(*this, parties_subset, "sub-signature");
  std::vector<int> d;
  d.reserve(parties_subset.size());
  for (int p : parties_subset) d.push_back(dims[p]);
  return PartySignature(std::move(d));
}

std::vector<int> decode_index(const PartySignature& sig, long flat) {
  if (flat < 0 || flat >= sig.total_dim()) throw DimensionError("joint index out of range");
  std::vector<int> digits(sig.parties());
  for (int j = sig.parties() - 1; j >= 0; --j) {
    digits[j] = static_cast<int>(flat % sig.dims[j]);
    flat /= sig.dims[j];
  }
  return digits;
}

long encode_index(const PartySignature& sig, const std::vector<int>& digits) {
  if (static_cast<int>(digits.size()) != sig.parties())
    throw DimensionError("digit count does not match signature");
  long flat = 0;
  for (int j = 0; j < sig.parties(); ++j) {
    if (digits[j] < 0 || digits[j] >= sig.dims[j]) throw DimensionError("digit out of range");
    flat = flat * sig.dims[j] + digits[j];
  }
  return flat;
}

std::vector<MultipartiteState> StateSet::state_vector() const {
  std::vector<MultipartiteState> out;
  out.reserve(states.size());
  for (const NamedState& ns : states) out.push_back(ns.state);
  return out;
}

MultipartiteState make_state(PartySignature sig, cvec amps, double* rescale) {
  if (amps.size() != sig.total_dim())
    throw DimensionError("amplitude count " + std::to_string(amps.size()) +
                         " does not match signature dimension " + std::to_string(sig.total_dim()));
  const double n = amps.norm();
  if (n <= k_eps_degenerate) throw PreconditionError("amplitude vector has (near-)zero norm");
  if (rescale) *rescale = n;
  return MultipartiteState{std::move(sig), amps / n};
}

ProductState make_product_state(PartySignature sig, std::vector<cvec> locals) {
  if (static_cast<int>(locals.size()) != sig.parties())
    throw DimensionError("product state needs one local factor per party");
  for (int j = 0; j < sig.parties(); ++j) {
    if (locals[j].size() != sig.dims[j])
      throw DimensionError("local factor " + std::to_string(j) + " has length " +
                           std::to_string(locals[j].size()) + ", expected " +
                           std::to_string(sig.dims[j]));
    const double n = locals[j].norm();
    if (n <= k_eps_degenerate)
      throw PreconditionError("local factor " + std::to_string(j) + " has (near-)zero norm");
    locals[j] /= n;
  }
  return ProductState{std::move(sig), std::move(locals)};
}

StateSet make_state_set(PartySignature sig, std::vector<NamedState> states,
                        std::optional<std::vector<double>> priors) {
  if (sig.parties() < 2) throw DimensionError("a state set must be genuinely multipartite");
  if (states.empty()) throw PreconditionError("state set is empty");
  for (const NamedState& ns : states) {
    if (ns.state.signature != sig)
      throw DimensionError("state \"" + ns.name + "\" does not match the set signature");
  }
  if (priors) {
    if (priors->size() != states.size())
      throw PreconditionError("priors must list one probability per state");
    double sum = 0.0;
    for (double p : *priors) {
      if (p <= 0.0) throw PreconditionError("priors must be strictly positive");
      sum += p;
    }
    if (std::abs(sum - 1.0) > k_eps_norm) throw PreconditionError("priors must sum to one");
  }
  return StateSet{std::move(sig), std::move(states), std::move(priors)};
}

cplx inner(const MultipartiteState& a, const MultipartiteState& b) {
  if (a.signature != b.signature) throw DimensionError("inner product across different signatures");
  return a.amps.dot(b.amps);
}

MultipartiteState embed(const ProductState& p) {
  cvec acc = cvec::Ones(1);
  for (const cvec& local : p.locals) {
    acc = Eigen::kroneckerProduct(acc, local).eval();
  }
  return make_state(p.signature, std::move(acc));
}

MultipartiteState merge_parties(const MultipartiteState& s, int i, int j) {
  const int n = s.signature.parties();
  if (i < 0 || i >= n || j < 0 || j >= n) throw DimensionError("party index out of range");
  if (j != i + 1) throw DimensionError("only adjacent parties can be merged");
  std::vector<int> dims = s.signature.dims;
  dims[i] *= dims[j];
  dims.erase(dims.begin() + j);
  // Party i varies slower than i+1, so fusing them preserves every index.
  return MultipartiteState{PartySignature(std::move(dims)), s.amps};
}

cvec condition_on(const MultipartiteState& s, const std::vector<int>& kept,
                  const ProductState& probe) {
  check_party_subset(s.signature, kept, "condition_on");
  if (static_cast<int>(kept.size()) == s.signature.parties())
    throw DimensionError("condition_on: kept parties must be a proper subset");
  const std::vector<int> rest = complement_parties(s.signature, kept);
  if (probe.signature != s.signature.sub(rest))
    throw DimensionError("probe signature does not match the traced-out parties");

  const PartySignature kept_sig = s.signature.sub(kept);
  const PartySignature& rest_sig = probe.signature;
  const cvec probe_amps = embed(probe).amps;

  cvec out = cvec::Zero(kept_sig.total_dim());
  std::vector<int> digits(s.signature.parties(), 0);
  std::vector<int> kept_digits(kept.size());
  std::vector<int> rest_digits(rest.size());
  const long total = s.signature.total_dim();
  for (long flat = 0; flat < total; ++flat) {
    for (std::size_t k = 0; k < kept.size(); ++k) kept_digits[k] = digits[kept[k]];
    for (std::size_t k = 0; k < rest.size(); ++k) rest_digits[k] = digits[rest[k]];
    out(encode_index(kept_sig, kept_digits)) +=
        std::conj(probe_amps(encode_index(rest_sig, rest_digits))) * s.amps(flat);
    advance_digits(digits, s.signature.dims);
  }
  return out;
}

bool is_product_across(const MultipartiteState& s, const std::vector<int>& side_a, double tol) {
  check_party_subset(s.signature, side_a, "is_product_across");
  if (static_cast<int>(side_a.size()) == s.signature.parties())
    throw DimensionError("is_product_across: side must be a proper subset of the parties");
  const std::vector<int> side_b = complement_parties(s.signature, side_a);
  const PartySignature sig_a = s.signature.sub(side_a);
  const PartySignature sig_b = s.signature.sub(side_b);

  cmat m(sig_a.total_dim(), sig_b.total_dim());
  std::vector<int> digits(s.signature.parties(), 0);
  std::vector<int> a_digits(side_a.size());
  std::vector<int> b_digits(side_b.size());
  const long total = s.signature.total_dim();
  for (long flat = 0; flat < total; ++flat) {
    for (std::size_t k = 0; k < side_a.size(); ++k) a_digits[k] = digits[side_a[k]];
    for (std::size_t k = 0; k < side_b.size(); ++k) b_digits[k] = digits[side_b[k]];
    m(encode_index(sig_a, a_digits), encode_index(sig_b, b_digits)) = s.amps(flat);
    advance_digits(digits, s.signature.dims);
  }

  const Eigen::VectorXd sv = Eigen::JacobiSVD<cmat>(m).singularValues();
  for (Eigen::Index k = 1; k < sv.size(); ++k) {
    if (sv(k) > tol) return false;
  }
  return true;
}

}  // namespace trilocc
