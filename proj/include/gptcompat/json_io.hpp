#ifndef GPTCOMPAT_JSON_IO_HPP
#define GPTCOMPAT_JSON_IO_HPP

#include "gptcompat/compatibility.hpp"
#include "gptcompat/scan.hpp"

#include "json.hpp"

#include <string>

namespace gptcompat {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError carrying
/// "<source>:<line>:<column>: ...".
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

// Rationals travel as strings ("3", "-1/2"); plain JSON integers are
// accepted on input, floats are not.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const RationalVector& v);
RationalVector rational_vector_from_json(const Json& j);

/// {"dimension": 2, "vertices": [["0","0"], ...]}. Loading canonicalizes.
Json space_to_json(const StateSpace& space);
SpacePtr space_from_json(const Json& j);

/// {"constant": "0", "linear": ["1","0"]}
Json functional_to_json(const AffineFunctional& f);
AffineFunctional functional_from_json(const Json& j, const SpacePtr& space);

/// {"outcomes": [<functional>, ...]}
Json measurement_to_json(const Measurement& m);
Measurement measurement_from_json(const Json& j, const SpacePtr& space);

Json lp_to_json(const LpProblem& p);
LpProblem lp_from_json(const Json& j);

/// {"verdict":"compatible","joint":[[...]]} or
/// {"verdict":"incompatible","farkas":[...],"lp":{...}}
Json verdict_to_json(const CompatibilityVerdict& v);
CompatibilityVerdict verdict_from_json(const Json& j, const SpacePtr& space);

Json robustness_to_json(const RobustnessResult& r);

/// {"decomposable":true,"u1":...,"u2":...} or
/// {"decomposable":false,"farkas":[...],"lp":{...}}
Json riesz_result_to_json(const RieszResult& r);
RieszResult riesz_result_from_json(const Json& j, const SpacePtr& space);

Json witness_to_json(const ScanWitness& w);
ScanWitness witness_from_json(const Json& j, const SpacePtr& space);

Json report_to_json(const ScanReport& r);
ScanReport report_from_json(const Json& j, const SpacePtr& space);

/// "space_id,seed,pairs_tested,incompatible_count,witness_path"
std::string report_csv_header();
std::string report_csv_row(const ScanReport& r, const std::string& witness_path);

} // namespace gptcompat

#endif
