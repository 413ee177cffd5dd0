#pragma once

// JSON shapes:
//   solution: {"regime", "mach", "waves": [{"speed", "left": {"rho","u"}, "right": {"rho","u"}}],
//              "dirac": {"w_rho": "t", "w_p": number} | null}
//   fv config: {"mach", "direction", "domain_length", "n_cells", "cfl", "t_end",
//               "snapshot_times", "layer_eps", "flux"}
// An infinite Mach number is written as the string "inf".

#include <string>
#include <string_view>

#include "chaplygin/exact.hpp"
#include "chaplygin/fvm.hpp"

namespace chaplygin {

std::string solution_to_json(const PistonSolution& solution, int indent = 2);

// Missing optional fields take defaults (domain_length: 1.1 x the required
// length).  Throws ConfigError naming the offending field.
FvConfig fv_config_from_json(std::string_view text);
std::string fv_config_to_json(const FvConfig& config, int indent = 2);

}  // namespace chaplygin
