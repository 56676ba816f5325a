#pragma once

#include <string>

#include "json.hpp"
#include "kf/experiments.hpp"
#include "kf/grid.hpp"
#include "kf/measure.hpp"

namespace kf {

/// Measure from its JSON description:
///   {"type":"lebesgue"}
///   {"type":"cantor","weights":[w1,w2]}
///   {"type":"cantor_approx","weights":[w1,w2],"level":n}
///   {"type":"mixture","base":{...},"epsilon":e}
///   {"type":"tabulated","samples":[[x,F],...]}
Measure measure_from_json(const nlohmann::json& j);

/// Family from {"kind":"cantor_levels"|"epsilon_mixture"|"composed", ...}
/// with "weights", "levels", "epsilons" and an optional "base" measure.
FamilySpec family_spec_from_json(const nlohmann::json& j);

/// Right-hand-side descriptor: const:c | x | x1mx | sin:k | hat:a,b,c.
GridFunction rhs_from_descriptor(const std::string& desc, GridPtr grid);

nlohmann::json load_json_file(const std::string& path);

}  // namespace kf
