#pragma once

// JSON schemas for the library types. Parse errors are ConfigError with the
// offending field path in the message.

#include <string>

#include <json.hpp>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/commutant.hpp"
#include "blaschke_lab/settings.hpp"
#include "blaschke_lab/space.hpp"
#include "blaschke_lab/wold.hpp"

namespace blaschke_lab {

using Json = nlohmann::json;

/// A number, [re, im] or {"re": .., "im": ..}.
Complex complex_from_json(const Json& j, const std::string& path);
Json complex_to_json(Complex z);

/// An array of coefficients, lowest degree first.
TaylorPoly poly_from_json(const Json& j, const std::string& path);
Json poly_to_json(const TaylorPoly& f);

/// {"theta": t, "zeros": [{"re": .., "im": .., "mult": ..}, ..]}; theta and
/// mult are optional. The shorthand {"monomial": n} stands for z^n.
BlaschkeProduct blaschke_from_json(const Json& j, const std::string& path, const Settings& settings = {});
Json blaschke_to_json(const BlaschkeProduct& B);

/// n x n nested array of coefficient lists.
MultiplierMatrix multiplier_from_json(const Json& j, const std::string& path);
Json multiplier_to_json(const MultiplierMatrix& phi);

/// {"B": .., "M": .., "c": n rows of M+1 [re, im] pairs}
Json decomposition_to_json(const ShellDecomposition& dec);

/// Overrides the named members of Settings; unknown keys are rejected.
Settings settings_from_json(const Json& j, const std::string& path, Settings base = {});

}  // namespace blaschke_lab
