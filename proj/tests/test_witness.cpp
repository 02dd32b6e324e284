#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "trilocc/witness.hpp"

using namespace trilocc;
using namespace testutil;

namespace {

ProductState product_01() {
  cvec zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  return make_product_state(PartySignature({2, 2}), {zero, one});
}

// {|0>|u>, |1>|v>, |2>|w>} on [3, 2]: the supports on the qutrit are
// orthogonal, so each state has an obvious witness.
StateSet orthogonal_support_triple() {
  const PartySignature sig({3, 2});
  auto lift = [&](int level, cplx u0, cplx u1) {
    cvec amps = cvec::Zero(6);
    amps(2 * level) = u0;
    amps(2 * level + 1) = u1;
    return make_state(sig, std::move(amps));
  };
  return make_state_set(sig, {NamedState{"s1", lift(0, 1, 0)},
                              NamedState{"s2", lift(1, 1, 1)},
                              NamedState{"s3", lift(2, 1, cplx(0, -1))}});
}

}  // namespace

TEST_CASE("verify_witness separates targets from the rest") {
  const StateSet s = asymmetric_triple();
  const ProductState phi = product_01();
  CHECK(verify_witness(s, 2, phi));
  CHECK_FALSE(verify_witness(s, 0, phi));
  CHECK_FALSE(verify_witness(s, 1, phi));

  CHECK_THROWS_AS(verify_witness(s, 3, phi), DimensionError);
  const ProductState wrong_sig =
      make_product_state(PartySignature({2, 2, 2}),
                         {phi.locals[0], phi.locals[1], phi.locals[0]});
  CHECK_THROWS_AS(verify_witness(s, 2, wrong_sig), DimensionError);
}

TEST_CASE("high-dimensional witnesses verify for every target") {
  rng_t rng(31);
  for (const PartySignature& sig :
       {PartySignature({3, 2}), PartySignature({2, 3}), PartySignature({3, 3})}) {
    for (int rep = 0; rep < 15; ++rep) {
      const StateSet s = random_independent_triple(sig, rng);
      for (int x = 0; x < 3; ++x) {
        SearchStats stats;
        const Witness w = witness_highdim(s, x, rng, 16, &stats);
        CHECK(w.target == x);
        CHECK(verify_witness(s, x, w.phi));
        CHECK(w.success_probability > 1e-18);
        CHECK(stats.theta_draws >= 1);
      }
    }
  }
}

TEST_CASE("high-dimensional witness picks the free level on orthogonal supports") {
  const StateSet s = orthogonal_support_triple();
  rng_t rng(32);
  const Witness w = witness_highdim(s, 2, rng);
  // Constraints pin the qutrit factor to the third level (up to phase).
  CHECK(std::abs(w.phi.locals[0](2)) == doctest::Approx(1.0));
  CHECK(verify_witness(s, 2, w.phi));
}

TEST_CASE("high-dimensional witness preconditions") {
  rng_t rng(33);
  const StateSet qubits = random_independent_triple(PartySignature({2, 2}), rng);
  CHECK_THROWS_AS(witness_highdim(qubits, 0, rng), PreconditionError);

  const PartySignature sig({3, 2});
  const MultipartiteState a = haar_state(sig, rng);
  const MultipartiteState b = haar_state(sig, rng);
  const MultipartiteState mix =
      make_state(sig, 0.6 * a.amps + 0.8 * b.amps);
  const StateSet dependent = make_state_set(
      sig, {NamedState{"a", a}, NamedState{"b", b}, NamedState{"mix", mix}});
  CHECK_THROWS_AS(witness_highdim(dependent, 0, rng), PreconditionError);

  const StateSet pair =
      make_state_set(sig, {NamedState{"a", a}, NamedState{"b", b}});
  CHECK_THROWS_AS(witness_highdim(pair, 0, rng), PreconditionError);
  CHECK_THROWS_AS(witness_highdim(qubits, 5, rng), DimensionError);
}

TEST_CASE("two-qubit decision on the asymmetric triple") {
  const StateSet s = asymmetric_triple();

  const std::optional<Witness> w3 = witness_two_qubit(s, 2);
  REQUIRE(w3.has_value());
  CHECK(w3->success_probability == doctest::Approx(1.0));
  CHECK(std::abs(inner(s.state(2), embed(w3->phi))) == doctest::Approx(1.0));

  CHECK_FALSE(witness_two_qubit(s, 0).has_value());
  CHECK_FALSE(witness_two_qubit(s, 1).has_value());
}

TEST_CASE("two-qubit decision on the Bell triple") {
  const StateSet s = bell_triple();
  for (int x = 0; x < 3; ++x) {
    const std::optional<Witness> w = witness_two_qubit(s, x);
    REQUIRE(w.has_value());
    CHECK(w->success_probability == doctest::Approx(0.5));
    CHECK(verify_witness(s, x, w->phi));
  }
}

TEST_CASE("two-qubit decision on orthogonal products gives certainty") {
  const StateSet s = orthogonal_product_triple();
  for (int x = 0; x < 3; ++x) {
    const std::optional<Witness> w = witness_two_qubit(s, x);
    REQUIRE(w.has_value());
    CHECK(w->success_probability == doctest::Approx(1.0));
  }
}

TEST_CASE("all-entangled and all-product two-qubit triples are fully identifiable") {
  rng_t rng(34);
  for (int rep = 0; rep < 25; ++rep) {
    const StateSet ent = random_entangled_triple(rng);
    const StateSet prod = random_product_triple(rng);
    for (int x = 0; x < 3; ++x) {
      const std::optional<Witness> we = witness_two_qubit(ent, x);
      REQUIRE(we.has_value());
      CHECK(verify_witness(ent, x, we->phi));
      const std::optional<Witness> wp = witness_two_qubit(prod, x);
      REQUIRE(wp.has_value());
      CHECK(verify_witness(prod, x, wp->phi));
    }
  }
}

TEST_CASE("some state of every two-qubit triple is identifiable") {
  rng_t rng(35);
  for (int rep = 0; rep < 40; ++rep) {
    const StateSet s = random_independent_triple(PartySignature({2, 2}), rng);
    int identifiable = 0;
    for (int x = 0; x < 3; ++x) identifiable += witness_two_qubit(s, x).has_value();
    CHECK(identifiable >= 1);
  }
}

TEST_CASE("qubit-chain search identifies some state and verifies it") {
  rng_t rng(36);
  for (const PartySignature& sig : {PartySignature({2, 2, 2}), PartySignature({2, 2, 2, 2})}) {
    for (int rep = 0; rep < 20; ++rep) {
      const StateSet s = random_independent_triple(sig, rng);
      SearchStats stats;
      const std::pair<int, Witness> found = witness_multiqubit(s, rng, 16, &stats);
      CHECK(found.first >= 0);
      CHECK(found.first < 3);
      CHECK(found.second.target == found.first);
      CHECK(verify_witness(s, found.first, found.second.phi));
      CHECK(stats.pipeline_restarts >= 1);
    }
  }
}

TEST_CASE("targeted qubit-chain search returns verified witnesses") {
  rng_t rng(37);
  const PartySignature sig({2, 2, 2});
  int hits = 0;
  for (int rep = 0; rep < 15; ++rep) {
    const StateSet s = random_independent_triple(sig, rng);
    for (int x = 0; x < 3; ++x) {
      const std::optional<Witness> w = witness_multiqubit_targeted(s, x, rng, 16);
      if (!w) continue;
      ++hits;
      CHECK(w->target == x);
      CHECK(verify_witness(s, x, w->phi));
    }
  }
  CHECK(hits >= 15);  // targeted searches succeed for most random targets
}

TEST_CASE("qubit-chain preconditions") {
  rng_t rng(38);
  const StateSet qubits2 = random_independent_triple(PartySignature({2, 2}), rng);
  CHECK_THROWS_AS(witness_multiqubit(qubits2, rng), PreconditionError);
  const StateSet qutrit = random_independent_triple(PartySignature({3, 2, 2}), rng);
  CHECK_THROWS_AS(witness_multiqubit(qutrit, rng), PreconditionError);
  CHECK_THROWS_AS(witness_multiqubit_targeted(qutrit, 0, rng), PreconditionError);
}

TEST_CASE("classification dispatches on the signature") {
  rng_t rng(39);

  const StateSet high = random_independent_triple(PartySignature({2, 3}), rng);
  ClassifyOptions opt;
  opt.seed = 91;
  const ClassificationReport high_rep = classify(high, opt);
  CHECK(high_rep.set_verdict == SetVerdict::conclusively_locally_distinguishable);
  for (const StateVerdict& v : high_rep.per_state) {
    CHECK(v.kind == StateVerdictKind::identifiable);
    REQUIRE(v.witness.has_value());
    CHECK(verify_witness(high, v.witness->target, v.witness->phi));
  }
  CHECK(high_rep.seed == 91);
  CHECK(high_rep.stats.theta_draws >= 3);

  const ClassificationReport asym = classify(asymmetric_triple(), opt);
  CHECK(asym.per_state[0].kind == StateVerdictKind::certified_not_identifiable);
  CHECK(asym.per_state[1].kind == StateVerdictKind::certified_not_identifiable);
  CHECK(asym.per_state[2].kind == StateVerdictKind::identifiable);
  CHECK(asym.set_verdict == SetVerdict::not_conclusively_distinguishable);

  const ClassificationReport prod = classify(orthogonal_product_triple(), opt);
  CHECK(prod.set_verdict == SetVerdict::conclusively_locally_distinguishable);

  const StateSet chain = random_independent_triple(PartySignature({2, 2, 2}), rng);
  const ClassificationReport chain_rep = classify(chain, opt);
  int identifiable = 0;
  for (const StateVerdict& v : chain_rep.per_state) {
    if (v.kind == StateVerdictKind::identifiable) {
      ++identifiable;
      CHECK(verify_witness(chain, v.witness->target, v.witness->phi));
    } else {
      CHECK(v.kind == StateVerdictKind::undecided);
    }
  }
  CHECK(identifiable >= 1);
  CHECK(chain_rep.set_verdict != SetVerdict::not_conclusively_distinguishable);
}

TEST_CASE("classification preconditions") {
  rng_t rng(40);
  const PartySignature sig({2, 2});
  const MultipartiteState a = haar_state(sig, rng);
  const MultipartiteState b = haar_state(sig, rng);
  const StateSet two = make_state_set(sig, {NamedState{"a", a}, NamedState{"b", b}});
  CHECK_THROWS_AS(classify(two), PreconditionError);

  const MultipartiteState mix = make_state(sig, a.amps + cplx(0, 1) * b.amps);
  const StateSet dep = make_state_set(
      sig, {NamedState{"a", a}, NamedState{"b", b}, NamedState{"mix", mix}});
  CHECK_THROWS_AS(classify(dep), PreconditionError);
}

TEST_CASE("classification is reproducible per seed") {
  rng_t rng(41);
  for (const PartySignature& sig : {PartySignature({2, 3}), PartySignature({2, 2, 2})}) {
    const StateSet s = random_independent_triple(sig, rng);
    ClassifyOptions opt;
    opt.seed = 1234;
    const ClassificationReport r1 = classify(s, opt);
    const ClassificationReport r2 = classify(s, opt);
    REQUIRE(r1.per_state.size() == r2.per_state.size());
    for (int x = 0; x < 3; ++x) {
      CHECK(r1.per_state[x].kind == r2.per_state[x].kind);
      if (!r1.per_state[x].witness) continue;
      REQUIRE(r2.per_state[x].witness.has_value());
      CHECK(r1.per_state[x].witness->success_probability ==
            r2.per_state[x].witness->success_probability);
      for (int j = 0; j < sig.parties(); ++j) {
        const cvec& l1 = r1.per_state[x].witness->phi.locals[j];
        const cvec& l2 = r2.per_state[x].witness->phi.locals[j];
        CHECK((l1 - l2).norm() == 0.0);  // bit-identical draws
      }
    }
    CHECK(r1.stats.theta_draws == r2.stats.theta_draws);
    CHECK(r1.stats.pipeline_restarts == r2.stats.pipeline_restarts);
  }
}

TEST_CASE("success maximization never loses to the plain construction") {
  const StateSet bell = bell_triple();
  rng_t rng(42);
  const Witness best = maximize_success(bell, 0, 8, rng);
  CHECK(best.success_probability == doctest::Approx(0.5));

  const StateSet s = random_independent_triple(PartySignature({2, 3}), rng);
  for (int x = 0; x < 3; ++x) {
    rng_t rng_plain(77);
    rng_t rng_more(77);
    const Witness plain = maximize_success(s, x, 1, rng_plain);
    const Witness more = maximize_success(s, x, 64, rng_more);
    CHECK(more.success_probability >= plain.success_probability - 1e-12);
    CHECK(verify_witness(s, x, more.phi));
  }

  CHECK_THROWS_AS(maximize_success(asymmetric_triple(), 0, 4, rng), PreconditionError);
  CHECK_THROWS_AS(maximize_success(bell, 0, 0, rng), PreconditionError);
}
