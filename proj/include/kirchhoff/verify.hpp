#pragma once

#include <vector>

#include <json.hpp>

namespace kirchhoff {

/// Runs the library's self-verification suite over the given p grid and
/// returns a JSON report: {"checks": [{name, description, values, tolerance,
/// pass}, ...], "all_pass": bool}. Includes the adjudication of the two
/// competing expressions for M_{2,p+1} ("eq_1_21_vs_4_20") and the n = 1
/// dual-formula cross-check.
nlohmann::json run_verification(const std::vector<double>& p_grid = {1.5, 2.0, 3.0});

}  // namespace kirchhoff
