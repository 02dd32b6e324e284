#include <doctest.h>

#include <cmath>
#include <string>

#include "trilocc/stateset_io.hpp"

using namespace trilocc;

namespace {

const std::string k_fixtures = TRILOCC_FIXTURES_DIR;

bool message_contains(const std::exception& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

#define CHECK_PARSE_ERROR(text, needle)                       \
  do {                                                        \
    try {                                                     \
      parse_state_set(text, "probe.json");                    \
      FAIL("expected a parse error mentioning " << (needle)); \
    } catch (const ParseError& e) {                           \
      CHECK(message_contains(e, needle));                     \
      CHECK(message_contains(e, "probe.json"));               \
    }                                                         \
  } while (0)

}  // namespace

TEST_CASE("fixture files load with the expected shapes") {
  const LoadedStateSet bell = load_state_set(k_fixtures + "/bell_triple.json");
  CHECK(bell.set.signature == PartySignature({2, 2}));
  CHECK(bell.set.size() == 3);
  CHECK(bell.set.name(0) == "phi_plus");
  CHECK(bell.set.name(2) == "psi_plus");
  // The file stores unnormalized +-1 amplitudes; the loader reports the norm.
  CHECK(bell.rescales[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(bell.set.state(0).amps.norm() == doctest::Approx(1.0));

  const LoadedStateSet asym = load_state_set(k_fixtures + "/asymmetric_triple.json");
  CHECK(asym.rescales[0] == doctest::Approx(1.0));
  CHECK(asym.set.state(0).amps(0).real() == doctest::Approx(0.6));

  const LoadedStateSet ghz = load_state_set(k_fixtures + "/ghz_triple.json");
  CHECK(ghz.set.signature == PartySignature({2, 2, 2}));
  CHECK_FALSE(ghz.set.priors.has_value());
}

TEST_CASE("priors round-trip when present") {
  const std::string text = R"({
    "dims": [2, 2],
    "states": [
      {"name": "a", "amps": [[1, 0], [0, 0], [0, 0], [0, 0]]},
      {"name": "b", "amps": [[0, 0], [0, 1], [0, 0], [0, 0]]}
    ],
    "priors": [0.25, 0.75]
  })";
  const LoadedStateSet loaded = parse_state_set(text);
  REQUIRE(loaded.set.priors.has_value());
  CHECK((*loaded.set.priors)[0] == doctest::Approx(0.25));
  CHECK(loaded.set.state(1).amps(1) == cplx(0, 1));
}

TEST_CASE("malformed documents fail with the offending field named") {
  CHECK_PARSE_ERROR("{", "invalid JSON");
  CHECK_PARSE_ERROR("[1, 2]", "top level");
  CHECK_PARSE_ERROR(R"({"states": []})", "dims");
  CHECK_PARSE_ERROR(R"({"dims": [2], "states": []})", "dims");
  CHECK_PARSE_ERROR(R"({"dims": [2, 1], "states": []})", "dims[1]");
  CHECK_PARSE_ERROR(R"({"dims": [2, 2.5], "states": []})", "dims[1]");
  CHECK_PARSE_ERROR(R"({"dims": [2, 2]})", "states");
  CHECK_PARSE_ERROR(R"({"dims": [2, 2], "states": []})", "states");
  CHECK_PARSE_ERROR(R"({"dims": [2, 2], "states": [{}]})", "states[0].name");

  const std::string short_amps = R"({
    "dims": [2, 2],
    "states": [{"name": "bad", "amps": [[1, 0], [0, 0], [0, 0]]}]
  })";
  CHECK_PARSE_ERROR(short_amps, "states[0].amps");
  CHECK_PARSE_ERROR(short_amps, "expected 4 amplitudes, got 3");
  CHECK_PARSE_ERROR(short_amps, "\"bad\"");

  CHECK_PARSE_ERROR(R"({
    "dims": [2, 2],
    "states": [{"name": "bad", "amps": [[1, 0], [0, 0], [0, 0], 7]}]
  })",
                    "states[0].amps[3]");

  CHECK_PARSE_ERROR(R"({
    "dims": [2, 2],
    "states": [
      {"name": "dup", "amps": [[1, 0], [0, 0], [0, 0], [0, 0]]},
      {"name": "dup", "amps": [[0, 0], [1, 0], [0, 0], [0, 0]]}
    ]
  })",
                    "duplicate state name");

  CHECK_PARSE_ERROR(R"({
    "dims": [2, 2],
    "states": [{"name": "zero", "amps": [[0, 0], [0, 0], [0, 0], [0, 0]]}]
  })",
                    "zero amplitude vector");

  CHECK_PARSE_ERROR(R"({
    "dims": [2, 2], "extra": 1,
    "states": [{"name": "a", "amps": [[1, 0], [0, 0], [0, 0], [0, 0]]}]
  })",
                    "unknown field");
}

TEST_CASE("bad priors are parse errors at load time") {
  const std::string base = R"({
    "dims": [2, 2],
    "states": [
      {"name": "a", "amps": [[1, 0], [0, 0], [0, 0], [0, 0]]},
      {"name": "b", "amps": [[0, 0], [1, 0], [0, 0], [0, 0]]}
    ],
    "priors": )";
  CHECK_PARSE_ERROR(base + "[0.5] }", "one probability per state");
  CHECK_PARSE_ERROR(base + "[0.5, 0.6] }", "sum to one");
  CHECK_PARSE_ERROR(base + "[1.5, -0.5] }", "strictly positive");
  CHECK_PARSE_ERROR(base + "\"half\" }", "priors");
}

TEST_CASE("missing files are parse errors naming the path") {
  try {
    load_state_set("/nonexistent/nowhere.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(message_contains(e, "nowhere.json"));
    CHECK(message_contains(e, "cannot open"));
  }
}
