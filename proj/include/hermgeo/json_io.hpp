#pragma once

#include "hermgeo/constructions.hpp"
#include "hermgeo/cubicnf.hpp"
#include "hermgeo/verify.hpp"

#include <json.hpp>

namespace hermgeo {

/** Documents are built as ordered maps so a fixed value always dumps to the
 *  same byte sequence. */
using ordered_json = nlohmann::ordered_json;

// Coordinate vectors serialize as arrays of field-element strings: a point
// or a plane as one array of four, a line as two row arrays.
ordered_json to_json(const Point& p);
ordered_json to_json(const Plane& h);
ordered_json to_json(const Line& l);

// Forms use the wire schema {"q", "degree", "terms": [{"exp", "c"}]} with
// terms in ascending exponent order.
ordered_json to_json(const Form2& g);
ordered_json to_json(const Form4& g);

/** Reads the wire schema against an existing field.  Throws
 *  std::invalid_argument when the document is not shaped as above, q
 *  disagrees with the field, an exponent vector has the wrong length, sum
 *  or sign, a coefficient string fails to parse, or a monomial repeats. */
Form4 form_from_json(const Field& f, const ordered_json& j);

// Top-level report documents open with the modulus table version.
ordered_json to_json(const Configuration& c);
ordered_json to_json(const SurveyReport& r);
ordered_json to_json(const StructureReport& r);

// Building blocks for the normal-form document; the caller adds the header.
ordered_json to_json(const CubicNF& nf);
ordered_json to_json(const TEllReport& r);

} // namespace hermgeo
