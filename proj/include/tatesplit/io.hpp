#pragma once

// JSON form of a complex:
//   {"space": {"factor_dims": [...]}, "field": "q" | "p:<prime>",
//    "complex": {"terms": [{"p": int, "twists": [[...], ...]}],
//                "diffs": [{"p": int, "entries": [[poly | 0, ...], ...]}]}}
//   poly = {"degree": [...], "terms": [{"c": int | "num/den", "e": [[...], ...]}]}
// with e listing the exponents per factor. Missing terms are zero, missing diffs are zero.

#include <optional>
#include <string>

#include "json.hpp"
#include "tatesplit/coxring.hpp"
#include "tatesplit/field.hpp"

namespace tatesplit {

struct ComplexInput {
    LineBundleComplex complex;
    std::optional<FieldSpec> field;
};

MultiHomogPoly poly_from_json(const ProductSpace& space, const nlohmann::json& j);
nlohmann::json poly_to_json(const ProductSpace& space, const MultiHomogPoly& f);

/// Validates shapes, homogeneity and d o d = 0; throws InputError naming the first problem.
ComplexInput complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(const LineBundleComplex& c, const std::optional<FieldSpec>& field = std::nullopt);

/// Parse errors carry the byte position.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
/// Reads a file ("-" for stdin).
std::string read_text(const std::string& path);

}  // namespace tatesplit
