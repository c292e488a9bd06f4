#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hmod/generate.hpp"
#include "hmod/inequalities.hpp"

namespace hmod {

using Json = nlohmann::json;

// Complex scalar: two-element array [re, im].
Json to_json(const Complex& z);
Complex complex_from_json(const Json& j, const std::string& context);

// Matrix: {"rows": r, "cols": c, "data": [[re,im], ...]} row-major.
// Doubles round-trip bit-exactly through the shortest-decimal formatting.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& context);

// ModuleVector: {"m": m, "d": d, "mat": <matrix>}.
Json to_json(const ModuleVector& v);
ModuleVector module_vector_from_json(const Json& j, const std::string& context);

// AlgebraElement: {"d": d, "mat": <matrix>}.
Json to_json(const AlgebraElement& a);
AlgebraElement algebra_element_from_json(const Json& j, const std::string& context);

// InequalityInstance:
// {"id": tag, "vectors": [...], "coefficients": [...], "scalars": [[re,im],...],
//  "operators": [...], "meta": {...}}. Arity is validated on load.
Json to_json(const InequalityInstance& inst);
InequalityInstance instance_from_json(const Json& j);

Json to_json(const GramSummary& g);
Json to_json(const OrderReport& r); // summary fields only, no gap matrix
Json to_json(const EvalReport& r);

// GenConfig JSON mirrors its fields one to one.
Json to_json(const GenConfig& cfg);
GenConfig gen_config_from_json(const Json& j);

// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump_json(const Json& j);

Json parse_json_text(const std::string& text, const std::string& context);
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

} // namespace hmod
