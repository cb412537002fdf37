#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "covercrimp/cover.hpp"
#include "covercrimp/crimp.hpp"
#include "covercrimp/marked_curve.hpp"
#include "covercrimp/monodromy.hpp"

// JSON (de)serialization for every public value type. Outputs are canonical:
// nlohmann::json with the default (sorted-key) object representation, so
// dump() of equal values is byte-identical. All shape and type violations
// throw SchemaError.

namespace covercrimp::json_io {

using json = nlohmann::json;

// "rational" or {"Fq": q}
Field field_from_json(const json& j);
json field_to_json(const Field& f);

// {"coefficients": ["1", "2", ...], "field": ..., "precision": N}
TruncatedSeries series_from_json(const json& j);
json series_to_json(const TruncatedSeries& s);

// Bare coefficient array (strings, ascending exponent) in an ambient ring.
TruncatedSeries series_from_coefficients(const json& arr, const Field& f, std::size_t precision);
json coefficients_to_json(const TruncatedSeries& s);

// {"degree": d, "base": {"field": ..., "precision": N},
//  "presentation": {"polynomial": [[...]]} | {"branches": [[...]]}
//                | {"table": {"unit": [[...]], "c": [[[[...]]]],
//                             "tame_certified": bool?}}}
DiskCover cover_from_json(const json& j);
json cover_to_json(const DiskCover& c);

// {"components": [{"genus": g}], "edges": [[i,j]],
//  "markings": [{"component": i, "mult": m}], "points": [{"component": i}]}
MarkedNodalCurve curve_from_json(const json& j);
json curve_to_json(const MarkedNodalCurve& c);

// "(1 2)(3 4)" or {"images": [...]} with 1-based images.
Perm perm_from_json(const json& j, std::size_t degree);
json perm_to_json(const Perm& p);

// {"degree": d, "genus": h, "handles": [[a,b],...], "branches": [...]}
BranchedMonodromy monodromy_from_json(const json& j);
json monodromy_to_json(const BranchedMonodromy& m);

// {"split": d} | {"ramified_index": e}
// | {"table": <cover presentation table>, "automorphisms": [matrix...]}
// where a matrix is row-major [[series coeffs...]].
NormalizationData normalization_from_json(const json& j, const Field& f, std::size_t precision);

std::string rational_to_string(const mpq_class& v);

}  // namespace covercrimp::json_io
