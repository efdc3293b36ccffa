#pragma once

#include <json.hpp>

#include <string>

#include "shiftpd/binary_tree.hpp"
#include "shiftpd/decompose.hpp"
#include "shiftpd/formula.hpp"
#include "shiftpd/hardpolys.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/residue.hpp"
#include "shiftpd/upt.hpp"

namespace shiftpd {

// nlohmann::json keeps object keys sorted, so dumps are byte-stable.
using Json = nlohmann::json;

Json to_json(const MeasureResult& r);
Json to_json(const ResidueValue& r);
Json to_json(const DegreeSequence& ds);
Json to_json(const UptKTrace& tr);
Json to_json(const LowDepthParams& p);
Json to_json(const ProductDecomposition& pd);
Json to_json(const LdsReport& r);
Json to_json(const ResidueFloorReport& r);
Json to_json(const NwCountReport& r);
Json to_json(const Word& w);

// {nvars, root, nodes: [{id, op: "in"|"add"|"mul", var?, children: [{id, coeff}]}]},
// coefficients as exact rational strings.
Json formula_to_json(const Formula& f);
Formula formula_from_json(const Json& j);

// Text dump with two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace shiftpd
