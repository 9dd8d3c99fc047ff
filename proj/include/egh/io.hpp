#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "egh/borsuk.hpp"
#include "egh/gh.hpp"
#include "egh/good_approx.hpp"
#include "egh/metric.hpp"

namespace egh {

using Json = nlohmann::ordered_json;

// {"n", "dist", "basepoint", "labels"}; loading re-validates the metric and
// throws DomainError listing the first violation.
Json to_json(const FiniteMetricSpace& m);
FiniteMetricSpace space_from_json(const Json& j);

// {"space": ..., "group": {"gens": [...], "order": n}}. A group given as
// {"full": true} is the full isometry group; a missing group is trivial.
Json to_json(const Triple& t);
Triple triple_from_json(const Json& j);

Json to_json(const Group& G, const Elem& e);
Json to_json(const EpsApproximation& a);
Json to_json(const GhResult& r);
Json to_json(const ConditionReport& r, const Group& source, const Group& target);
Json to_json(const SymmetricTriangulation& t);
Json to_json(const ZeroWitness& w);

// Sample file: {"n", "subdivisions", "values": [[...] per vertex]} or
// {"n", "subdivisions", "map": [[row] ...]} for a linear map (k rows).
OddMapSample sample_from_json(const Json& j);

Json read_json(const std::string& path);
// Writes to a temporary file and renames it into place.
void write_text_atomic(const std::string& path, const std::string& text);

std::string csv_escape(const std::string& s);
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);
std::string fmt_double(double x);  // shortest round-trip form; "inf"/"nan" spelled out

}  // namespace egh
