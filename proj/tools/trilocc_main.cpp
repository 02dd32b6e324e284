// trilocc: conclusive identification of three multipartite pure states by
// local measurements.  Reports are machine-parseable "key = value" lines on
// stdout with a trailing "#"-prefixed human summary; the same inputs and
// seed always produce byte-identical output.
//
// Exit codes: 0 success, 1 usage or file parse error, 2 violated
// precondition (dependent states, wrong counts, bad target), 3 exhausted
// witness search or internal numerical breakdown.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trilocc/oracle.hpp"
#include "trilocc/protocol.hpp"
#include "trilocc/stateset_io.hpp"
#include "trilocc/subspace.hpp"
#include "trilocc/witness.hpp"

namespace {

using namespace trilocc;

// ---------------------------------------------------------------------------
// Deterministic formatting (fixed %.17g, locale-independent).

std::string fmt_f(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_g(double v) {  // short form for human summary lines
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_c(cplx z) { return "(" + fmt_f(z.real()) + "," + fmt_f(z.imag()) + ")"; }

std::string fmt_local(const cvec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_c(v(i));
  }
  return out + "]";
}

std::string fmt_dims(const PartySignature& sig) {
  std::string out = "[";
  for (int j = 0; j < sig.parties(); ++j) {
    if (j) out += ", ";
    out += std::to_string(sig.dims[j]);
  }
  return out + "]";
}

void kv(const std::string& key, const std::string& value) {
  std::cout << key << " = " << value << "\n";
}

void kv(const std::string& key, long value) { kv(key, std::to_string(value)); }
void kv(const std::string& key, std::uint64_t value) { kv(key, std::to_string(value)); }
void kv(const std::string& key, double value) { kv(key, fmt_f(value)); }

const char* verdict_name(StateVerdictKind k) {
  switch (k) {
    case StateVerdictKind::identifiable: return "identifiable";
    case StateVerdictKind::certified_not_identifiable: return "certified_not_identifiable";
    case StateVerdictKind::undecided: return "undecided";
  }
  return "?";
}

const char* verdict_name(SetVerdict v) {
  switch (v) {
    case SetVerdict::conclusively_locally_distinguishable:
      return "conclusively_locally_distinguishable";
    case SetVerdict::not_conclusively_distinguishable:
      return "not_conclusively_distinguishable";
    case SetVerdict::partially_decided: return "partially_decided";
  }
  return "?";
}

void print_witness_locals(const std::string& prefix, const ProductState& phi) {
  for (int j = 0; j < phi.signature.parties(); ++j)
    kv(prefix + ".party[" + std::to_string(j) + "]", fmt_local(phi.locals[j]));
}

void print_set_header(const std::string& file, const LoadedStateSet& loaded) {
  const StateSet& s = loaded.set;
  kv("file", file);
  kv("parties", static_cast<long>(s.signature.parties()));
  kv("dims", fmt_dims(s.signature));
  kv("state_count", static_cast<long>(s.size()));
}

// Mixes command-specific streams out of one user seed so classification,
// success maximization, and shot sampling never share draws.
rng_t derived_rng(std::uint64_t seed, std::uint64_t salt) { return rng_t(seed ^ salt); }

constexpr std::uint64_t k_salt_maximize = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t k_salt_protocol = 0xd1b54a32d192ed03ULL;

int resolve_target(const StateSet& s, const std::string& arg) {
  if (!arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos) {
    const int idx = std::stoi(arg);
    if (idx >= s.size())
      throw PreconditionError("target index " + arg + " out of range for " +
                              std::to_string(s.size()) + " states");
    return idx;
  }
  for (int k = 0; k < s.size(); ++k) {
    if (s.name(k) == arg) return k;
  }
  throw PreconditionError("no state named \"" + arg + "\" in the set");
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_check(const std::string& file, double tol) {
  const LoadedStateSet loaded = load_state_set(file);
  const StateSet& s = loaded.set;

  kv("command", "check");
  print_set_header(file, loaded);
  kv("tol", tol);
  for (int k = 0; k < s.size(); ++k) {
    const std::string p = "state[" + std::to_string(k) + "]";
    kv(p + ".name", s.name(k));
    kv(p + ".rescale", loaded.rescales[k]);
  }
  const cmat g = gram(s.state_vector());
  for (int i = 0; i < s.size(); ++i) {
    for (int j = 0; j < s.size(); ++j)
      kv("gram[" + std::to_string(i) + "][" + std::to_string(j) + "]", fmt_c(g(i, j)));
  }
  Eigen::SelfAdjointEigenSolver<cmat> es(g, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  const bool independent = min_eig > tol;
  kv("gram.min_eigenvalue", min_eig);
  kv("linearly_independent", independent ? "true" : "false");
  if (s.priors) {
    for (int k = 0; k < s.size(); ++k)
      kv("prior[" + std::to_string(k) + "]", (*s.priors)[k]);
  }
  std::cout << "# " << s.size() << " states on " << fmt_dims(s.signature)
            << "; linearly " << (independent ? "independent" : "DEPENDENT")
            << " at tol " << fmt_g(tol) << ".\n";
  return 0;
}

int cmd_classify(const std::string& file, double tol, std::uint64_t seed, int retries,
                 int restarts) {
  const LoadedStateSet loaded = load_state_set(file);
  const StateSet& s = loaded.set;

  ClassifyOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  opt.retries = retries;
  ClassificationReport rep = classify(s, opt);

  // Improve identifiable states' witnesses across independent restarts.
  if (restarts > 1) {
    rng_t mrng = derived_rng(seed, k_salt_maximize);
    for (int x = 0; x < s.size(); ++x) {
      StateVerdict& v = rep.per_state[x];
      if (v.kind != StateVerdictKind::identifiable) continue;
      try {
        Witness better = maximize_success(s, x, restarts, mrng);
        if (better.success_probability > v.witness->success_probability)
          v.witness = std::move(better);
      } catch (const SearchFailure&) {
        // keep the witness classification already produced
      }
    }
  }

  kv("command", "classify");
  print_set_header(file, loaded);
  kv("seed", seed);
  kv("tol", tol);
  kv("retries", static_cast<long>(retries));
  kv("restarts", static_cast<long>(restarts));
  for (int k = 0; k < s.size(); ++k) {
    const std::string p = "state[" + std::to_string(k) + "]";
    kv(p + ".name", s.name(k));
    kv(p + ".verdict", verdict_name(rep.per_state[k].kind));
    if (rep.per_state[k].witness) {
      const Witness& w = *rep.per_state[k].witness;
      kv(p + ".success_probability", w.success_probability);
      print_witness_locals(p + ".witness", w.phi);
    }
  }
  kv("set_verdict", verdict_name(rep.set_verdict));
  kv("stats.theta_draws", rep.stats.theta_draws);
  kv("stats.pipeline_restarts", rep.stats.pipeline_restarts);

  for (int k = 0; k < s.size(); ++k) {
    const StateVerdict& v = rep.per_state[k];
    std::cout << "# " << s.name(k) << ": " << verdict_name(v.kind);
    if (v.witness)
      std::cout << " (success probability " << fmt_g(v.witness->success_probability) << ")";
    std::cout << "\n";
  }
  std::cout << "# set: " << verdict_name(rep.set_verdict) << "\n";
  return 0;
}

int cmd_simulate(const std::string& file, const std::string& target_arg, double tol,
                 std::uint64_t seed, long shots) {
  const LoadedStateSet loaded = load_state_set(file);
  const StateSet& s = loaded.set;
  const int target = resolve_target(s, target_arg);

  ClassifyOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  const ClassificationReport rep = classify(s, opt);
  const StateVerdict& v = rep.per_state[target];
  if (v.kind != StateVerdictKind::identifiable) {
    throw PreconditionError("state \"" + s.name(target) + "\" is " +
                            verdict_name(v.kind) +
                            "; only identifiable states can be simulated");
  }

  rng_t prng = derived_rng(seed, k_salt_protocol);
  const ProtocolRunSummary sum = run_protocol(s, *v.witness, shots, prng);

  kv("command", "simulate");
  print_set_header(file, loaded);
  kv("seed", seed);
  kv("tol", tol);
  kv("target", static_cast<long>(target));
  kv("target.name", s.name(target));
  kv("shots", sum.shots);
  kv("predicted_probability", sum.predicted_probability);
  kv("conclusive_count", sum.conclusive_count);
  kv("false_conclusive_count", sum.false_conclusive_count);
  kv("empirical_frequency", sum.empirical_frequency);
  for (int k = 0; k < s.size(); ++k) {
    const std::string p = "per_state[" + std::to_string(k) + "]";
    kv(p + ".name", sum.per_true_state[k].name);
    kv(p + ".drawn", sum.per_true_state[k].drawn);
    kv(p + ".conclusive", sum.per_true_state[k].conclusive);
  }
  print_witness_locals("witness", v.witness->phi);
  std::cout << "# " << sum.conclusive_count << " conclusive hits over "
            << sum.per_true_state[target].drawn << " target draws (frequency "
            << fmt_g(sum.empirical_frequency) << ", predicted "
            << fmt_g(sum.predicted_probability) << "); "
            << sum.false_conclusive_count << " false conclusives.\n";
  return 0;
}

int cmd_oracle(const std::string& file, const std::string& target_arg, double tol,
               std::uint64_t seed, long samples) {
  const LoadedStateSet loaded = load_state_set(file);
  const StateSet& s = loaded.set;
  const int target = resolve_target(s, target_arg);

  const bool two_qubit = s.signature.dims == std::vector<int>{2, 2};
  OracleVerdict verdict;
  if (two_qubit) {
    verdict = enumerate_witnesses_2x2(s, target);
  } else {
    rng_t rng(seed);
    verdict = random_search_witness(s, target, samples, rng, tol);
  }

  kv("command", "oracle");
  print_set_header(file, loaded);
  kv("seed", seed);
  kv("tol", tol);
  kv("target", static_cast<long>(target));
  kv("target.name", s.name(target));
  kv("method", two_qubit ? "enumerate" : "random_search");
  switch (verdict.kind) {
    case OracleVerdict::Kind::exists_witness: kv("verdict", "exists_witness"); break;
    case OracleVerdict::Kind::certified_empty: kv("verdict", "certified_empty"); break;
    case OracleVerdict::Kind::not_found: kv("verdict", "not_found"); break;
  }
  if (!two_qubit) kv("samples_tried", verdict.samples_tried);
  kv("witness_count", static_cast<long>(verdict.witnesses.size()));
  for (std::size_t w = 0; w < verdict.witnesses.size(); ++w) {
    const std::string p = "witness[" + std::to_string(w) + "]";
    const double prob =
        std::norm(inner(s.state(target), embed(verdict.witnesses[w])));
    kv(p + ".success_probability", prob);
    print_witness_locals(p, verdict.witnesses[w]);
  }
  switch (verdict.kind) {
    case OracleVerdict::Kind::exists_witness:
      std::cout << "# " << verdict.witnesses.size() << " witness(es) for \""
                << s.name(target) << "\".\n";
      break;
    case OracleVerdict::Kind::certified_empty:
      std::cout << "# exhaustive enumeration: no witness exists for \""
                << s.name(target) << "\".\n";
      break;
    case OracleVerdict::Kind::not_found:
      std::cout << "# no witness found for \"" << s.name(target) << "\" in "
                << verdict.samples_tried << " samples (not a certificate).\n";
      break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "conclusive identification of three multipartite pure states by local "
      "measurements"};
  app.require_subcommand(1);

  std::string file;
  std::string target_arg;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int retries = 16;
  int restarts = 32;
  long shots = 100000;
  long samples = 1000;

  CLI::App* c_check =
      app.add_subcommand("check", "validate a state-set file and report its Gram analysis");
  c_check->add_option("file", file, "state-set JSON file")->required();
  c_check->add_option("--tol", tol, "zero threshold for overlap decisions")
      ->capture_default_str();

  CLI::App* c_classify = app.add_subcommand(
      "classify", "decide which states are conclusively locally identifiable");
  c_classify->add_option("file", file, "state-set JSON file")->required();
  c_classify->add_option("--tol", tol, "zero threshold for overlap decisions")
      ->capture_default_str();
  c_classify->add_option("--seed", seed, "random seed (reports are reproducible per seed)")
      ->required();
  c_classify->add_option("--retries", retries, "probe redraw budget per search")
      ->capture_default_str();
  c_classify
      ->add_option("--restarts", restarts,
                   "independent attempts when maximizing success probabilities")
      ->capture_default_str();

  CLI::App* c_simulate = app.add_subcommand(
      "simulate", "run the local measurement protocol for an identifiable state");
  c_simulate->add_option("file", file, "state-set JSON file")->required();
  c_simulate->add_option("--target", target_arg, "state to identify (name or index)")
      ->required();
  c_simulate->add_option("--tol", tol, "zero threshold for overlap decisions")
      ->capture_default_str();
  c_simulate->add_option("--seed", seed, "random seed (reports are reproducible per seed)")
      ->required();
  c_simulate->add_option("--shots", shots, "number of protocol runs")->capture_default_str();

  CLI::App* c_oracle = app.add_subcommand(
      "oracle", "independent witness-existence check (exhaustive on two qubits)");
  c_oracle->add_option("file", file, "state-set JSON file")->required();
  c_oracle->add_option("--target", target_arg, "state to identify (name or index)")
      ->required();
  c_oracle->add_option("--tol", tol, "zero threshold for overlap decisions")
      ->capture_default_str();
  c_oracle->add_option("--seed", seed, "random seed for the sampling search")
      ->capture_default_str();
  c_oracle->add_option("--samples", samples, "sampling budget of the random search")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*c_check) return cmd_check(file, tol);
    if (*c_classify) return cmd_classify(file, tol, seed, retries, restarts);
    if (*c_simulate) return cmd_simulate(file, target_arg, tol, seed, shots);
    if (*c_oracle) return cmd_oracle(file, target_arg, tol, seed, samples);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SearchFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InternalContradiction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {  // precondition and dimension errors
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
