#include "trilocc/stateset_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace trilocc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ParseError(origin + ": " + what);
}

double as_finite_number(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_number()) fail(origin, where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(origin, where + ": number is not finite");
  return v;
}

cplx as_amplitude(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    fail(origin, where + ": expected an [re, im] pair");
  return cplx(as_finite_number(j[0], origin, where + "[0]"),
              as_finite_number(j[1], origin, where + "[1]"));
}

}  // namespace

LoadedStateSet parse_state_set(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");
  for (const auto& item : doc.items()) {
    if (item.key() != "dims" && item.key() != "states" && item.key() != "priors")
      fail(origin, "unknown field \"" + item.key() + "\"");
  }

  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].size() < 2)
    fail(origin, "dims: expected an array of at least two local dimensions");
  std::vector<int> dims;
  for (std::size_t j = 0; j < doc["dims"].size(); ++j) {
    const json& d = doc["dims"][j];
    if (!d.is_number_integer() || d.get<long>() < 2)
      fail(origin, "dims[" + std::to_string(j) + "]: expected an integer >= 2");
    dims.push_back(static_cast<int>(d.get<long>()));
  }
  const PartySignature sig(dims);

  if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty())
    fail(origin, "states: expected a nonempty array");
  std::vector<NamedState> states;
  std::vector<double> rescales;
  std::set<std::string> seen_names;
  for (std::size_t k = 0; k < doc["states"].size(); ++k) {
    const std::string where = "states[" + std::to_string(k) + "]";
    const json& entry = doc["states"][k];
    if (!entry.is_object()) fail(origin, where + ": expected an object");
    if (!entry.contains("name") || !entry["name"].is_string())
      fail(origin, where + ".name: expected a string");
    const std::string name = entry["name"].get<std::string>();
    if (name.empty()) fail(origin, where + ".name: must be nonempty");
    if (!seen_names.insert(name).second)
      fail(origin, where + ".name: duplicate state name \"" + name + "\"");

    if (!entry.contains("amps") || !entry["amps"].is_array())
      fail(origin, where + ".amps: expected an array of [re, im] pairs");
    const json& amps_json = entry["amps"];
    if (static_cast<long>(amps_json.size()) != sig.total_dim())
      fail(origin, where + ".amps: expected " + std::to_string(sig.total_dim()) +
                       " amplitudes, got " + std::to_string(amps_json.size()) +
                       " (state \"" + name + "\")");
    cvec amps(sig.total_dim());
    for (std::size_t a = 0; a < amps_json.size(); ++a)
      amps(a) = as_amplitude(amps_json[a], origin, where + ".amps[" + std::to_string(a) + "]");

    double rescale = 1.0;
    try {
      states.push_back(NamedState{name, make_state(sig, std::move(amps), &rescale)});
    } catch (const PreconditionError&) {
      fail(origin, where + ".amps: state \"" + name + "\" has a zero amplitude vector");
    }
    rescales.push_back(rescale);
  }

  std::optional<std::vector<double>> priors;
  if (doc.contains("priors")) {
    if (!doc["priors"].is_array()) fail(origin, "priors: expected an array of numbers");
    std::vector<double> p;
    for (std::size_t k = 0; k < doc["priors"].size(); ++k)
      p.push_back(as_finite_number(doc["priors"][k], origin, "priors[" + std::to_string(k) + "]"));
    priors = std::move(p);
  }

  try {
    StateSet set = make_state_set(sig, std::move(states), std::move(priors));
    return LoadedStateSet{std::move(set), std::move(rescales)};
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
}

LoadedStateSet load_state_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_set(buf.str(), path);
}

}  // namespace trilocc
