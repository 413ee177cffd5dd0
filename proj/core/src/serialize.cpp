#include "chaplygin/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "chaplygin/errors.hpp"

namespace chaplygin {
namespace {

using nlohmann::json;

json mach_json(double mach) { return std::isinf(mach) ? json("inf") : json(mach); }

json state_json(const State& s) { return json{{"rho", s.rho}, {"u", s.u}}; }

json wave_json(double speed, const State& left, const State& right) {
  return json{{"speed", speed}, {"left", state_json(left)}, {"right", state_json(right)}};
}

double mach_from_json(const json& value) {
  try {
    if (value.is_string()) return parse_mach(value.get<std::string>());
    if (value.is_number()) {
      const double m = value.get<double>();
      if (!(m > 0.0)) throw DomainError("must be positive");
      return m;
    }
  } catch (const DomainError& e) {
    throw ConfigError("mach", e.what());
  }
  throw ConfigError("mach", "expected a number or \"inf\"");
}

template <class T>
T field_or(const json& doc, const char* name, T fallback) {
  if (!doc.contains(name)) return fallback;
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(name, std::string("wrong type: ") + e.what());
  }
}

}  // namespace

std::string solution_to_json(const PistonSolution& solution, int indent) {
  json doc;
  doc["regime"] = std::string(to_string(regime_of(solution)));
  doc["mach"] = mach_json(mach_of(solution));
  doc["waves"] = json::array();
  doc["dirac"] = nullptr;
  if (const auto* s = std::get_if<ShockSolution>(&solution)) {
    doc["waves"].push_back(wave_json(s->sigma, s->upstream, s->downstream));
  } else if (const auto* c = std::get_if<ContactWaveSolution>(&solution)) {
    doc["waves"].push_back(wave_json(c->sigma, c->upstream, c->downstream));
  } else if (const auto* d = std::get_if<ConcentrationSolution>(&solution)) {
    doc["dirac"] = json{{"w_rho", d->w_rho_slope == 1.0 ? json("t") : json(std::to_string(d->w_rho_slope) + "*t")},
                        {"w_p", d->w_p}};
  }
  return doc.dump(indent);
}

FvConfig fv_config_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  static const char* const known[] = {"mach",  "direction",      "domain_length", "n_cells", "cfl",
                                      "t_end", "snapshot_times", "layer_eps",     "flux"};
  for (const auto& item : doc.items()) {
    if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known)) {
      throw ConfigError(item.key(), "unknown field");
    }
  }

  FvConfig config;
  if (!doc.contains("mach")) throw ConfigError("mach", "required");
  config.mach = mach_from_json(doc.at("mach"));
  try {
    config.direction = parse_direction(field_or<std::string>(doc, "direction", "advancing"));
  } catch (const DomainError& e) {
    throw ConfigError("direction", e.what());
  }
  config.n_cells = field_or<int>(doc, "n_cells", config.n_cells);
  config.cfl = field_or<double>(doc, "cfl", config.cfl);
  config.t_end = field_or<double>(doc, "t_end", config.t_end);
  config.snapshot_times = field_or<std::vector<double>>(doc, "snapshot_times", {});
  if (doc.contains("layer_eps")) config.layer_eps = field_or<double>(doc, "layer_eps", 0.0);
  config.flux = parse_flux_kind(field_or<std::string>(doc, "flux", "hll"));
  if (doc.contains("domain_length")) {
    config.domain_length = field_or<double>(doc, "domain_length", 0.0);
  } else if (config.t_end > 0.0) {
    config.domain_length = 1.1 * required_domain_length(config.mach, config.direction, config.t_end);
  }
  return config;
}

std::string fv_config_to_json(const FvConfig& config, int indent) {
  json doc{{"mach", mach_json(config.mach)},
           {"direction", std::string(to_string(config.direction))},
           {"domain_length", config.domain_length},
           {"n_cells", config.n_cells},
           {"cfl", config.cfl},
           {"t_end", config.t_end},
           {"snapshot_times", config.snapshot_times},
           {"layer_eps", config.eps()},
           {"flux", std::string(to_string(config.flux))}};
  return doc.dump(indent);
}

}  // namespace chaplygin
