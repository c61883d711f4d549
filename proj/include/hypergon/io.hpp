#pragma once

// JSON documents (schema "hypergon/1") and CSV output. A path of "-" means
// stdin or stdout. Malformed input raises IoError.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "hypergon/bending.hpp"
#include "hypergon/gaussmap.hpp"

namespace hypergon::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "hypergon/1";

Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& doc);
Json parse_json(std::istream& in);
std::string dump(const Json& doc);
/// %.17g
std::string format_double(double x);

/// Adds the schema tag and the document type.
Json document(const std::string& type);
/// Checks the schema tag when present and, if `type` is nonempty, the type.
void check_document(const Json& doc, const std::string& type);

Json to_json(const hyp3::HPoint& p);
hyp3::HPoint point_from_json(const Json& j);
Json to_json(const hyp3::BoundaryPoint& p);
hyp3::BoundaryPoint boundary_from_json(const Json& j);
Json to_json(const borel::BElem& b);
borel::BElem belem_from_json(const Json& j);
Json to_json(const borel::SU2Elem& k);
borel::SU2Elem su2_from_json(const Json& j);
Json to_json(const moduli::Weights& r);
moduli::Weights weights_from_json(const Json& j);

/// {word: [...], vertices: [...] in `model`}
Json to_json(const moduli::HPolygon& p, hyp3::Model model = hyp3::Model::Ball);
moduli::HPolygon hpolygon_from_json(const Json& j);
Json to_json(const moduli::EPolygon& p);
moduli::EPolygon epolygon_from_json(const Json& j);
/// {points: [[x,y,z]], charts: [[re,im] | "inf"], weights: [...]}
Json to_json(const gaussmap::Configuration& c);
gaussmap::Configuration configuration_from_json(const Json& j);
Json to_json(const bending::ActionAngle& aa);
bending::ActionAngle action_angle_from_json(const Json& j);
Json to_json(const gaussmap::SolverReport& r);

}  // namespace hypergon::io
