#include "trilocc/sampling.hpp"

namespace trilocc {

cvec haar_local(int dim, rng_t& rng) {
  if (dim < 1) throw DimensionError("dimension must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  cvec v(dim);
  double n = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    n = v.norm();
  } while (n <= k_eps_degenerate);
  return v / n;
}

MultipartiteState haar_state(const PartySignature& sig, rng_t& rng) {
  return make_state(sig, haar_local(static_cast<int>(sig.total_dim()), rng));
}

ProductState haar_product_state(const PartySignature& sig, rng_t& rng) {
  std::vector<cvec> locals;
  locals.reserve(sig.parties());
  for (int d : sig.dims) locals.push_back(haar_local(d, rng));
  return ProductState{sig, std::move(locals)};
}

}  // namespace trilocc
