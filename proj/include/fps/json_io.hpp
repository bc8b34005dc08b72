#pragma once

#include <json.hpp>

#include <string>

#include "fps/matrix.hpp"
#include "fps/polynomial.hpp"

namespace fps {

using json = nlohmann::ordered_json;

// Index as a JSON value: naturals are numbers; words are compact strings,
// or symbol arrays when the alphabet makes the string ambiguous.
json index_json(const IndexSpace& space, const Index& x);
Index read_index(const IndexSpace& space, const json& j);

json space_json(const IndexSpace& space);
IndexSpace read_space(const json& j);

// {"field": "Q", "terms": [{"index": ..., "coeff": "3/4"}, ...]}
// Terms are canonically ordered; round-trips byte for byte.
json polynomial_json(const Polynomial& p);
Polynomial read_polynomial(const json& j, const IndexSpace& space);

// {"source": ..., "target": ..., "field": ..., "rows": [{"y": ..., "entries":
// [{"x": ..., "coeff": ...}, ...]}, ...]} with only nonzero rows listed.
json matrix_json(const RowFiniteMatrix& m, const std::vector<Index>& rows);
RowFiniteMatrix read_matrix(const json& j);

json parse_json_text(const std::string& text);
json load_json_file(const std::string& path);

}  // namespace fps
