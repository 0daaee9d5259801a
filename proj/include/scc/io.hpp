#pragma once

// JSON and CSV encodings shared by the command-line tool and its tests.
// Doubles are written in shortest round-trip form.

#include "scc/dynamics.hpp"
#include "scc/dziobek.hpp"
#include "scc/geometry.hpp"
#include "scc/potential.hpp"
#include "scc/solver.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace scc::io {

using Json = nlohmann::json;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Parses JSON text; syntax errors are reported with 1-based line and column.
Json parse_json(std::string_view text);

/// {"dim": n, "points": [[...], ...]}
Json to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

/// Adds "masses" to the configuration object.
Json to_json(const Configuration& c, const MassVector& m);
/// Reads "masses" when present.
std::optional<MassVector> masses_from_json(const Json& j);
/// Accepts a JSON array of masses or an object with a "masses" member.
MassVector mass_list_from_json(const Json& j);

Json to_json(const SccResidualReport& r);
Json to_json(const DziobekReport& r);
Json to_json(const DriftReport& r);
Json to_json(const SccClass& k);
Json to_json(const HemisphereResult& h);

/// Velocities as a list of N vectors.
Eigen::MatrixXd velocities_from_json(const Json& j, Eigen::Index rows,
                                     Eigen::Index cols);

}  // namespace scc::io
