#pragma once

#include <cstdint>
#include <random>

#include "trilocc/statecore.hpp"

namespace trilocc {

// One engine type everywhere so fixed seeds reproduce bit-identical runs.
using rng_t = std::mt19937_64;

// Haar-uniform unit vector in C^dim (normalized complex Gaussian).
cvec haar_local(int dim, rng_t& rng);

// Haar-uniform joint state.
MultipartiteState haar_state(const PartySignature& sig, rng_t& rng);

// Independent Haar-uniform factor per party.
ProductState haar_product_state(const PartySignature& sig, rng_t& rng);

}  // namespace trilocc
