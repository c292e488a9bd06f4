#include "hmod/json_io.hpp"

#include <fstream>

namespace hmod {

namespace {

double finite_number(const Json& j, const std::string& context) {
    if (!j.is_number())
        throw ValidationError(context + ": expected a number, got " + std::string(j.type_name()));
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ValidationError(context + ": non-finite number");
    return v;
}

long positive_int(const Json& j, const std::string& context) {
    if (!j.is_number_integer())
        throw ValidationError(context + ": expected a positive integer");
    const long v = j.get<long>();
    if (v < 1)
        throw ValidationError(context + ": expected a positive integer, got " +
                              std::to_string(v));
    return v;
}

const Json& member(const Json& j, const char* key, const std::string& context) {
    if (!j.is_object())
        throw ValidationError(context + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(context + ": missing field '" + key + "'");
    return *it;
}

constexpr long kMaxEntries = 1 << 20; // guards absurd allocations from bad files

} // namespace

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError(context + ": complex scalar must be a [re, im] pair");
    return {finite_number(j[0], context + "[0]"), finite_number(j[1], context + "[1]")};
}

Json to_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back(to_json(m(i, j)));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& context) {
    const long rows = positive_int(member(j, "rows", context), context + ".rows");
    const long cols = positive_int(member(j, "cols", context), context + ".cols");
    if (rows * cols > kMaxEntries)
        throw ValidationError(context + ": matrix too large (" + std::to_string(rows) + "x" +
                              std::to_string(cols) + ")");
    const Json& data = member(j, "data", context);
    if (!data.is_array() || static_cast<long>(data.size()) != rows * cols)
        throw ValidationError(context + ".data: expected " + std::to_string(rows * cols) +
                              " row-major entries, got " + std::to_string(data.size()));
    ComplexMatrix m(rows, cols);
    long idx = 0;
    for (long i = 0; i < rows; ++i)
        for (long c = 0; c < cols; ++c, ++idx)
            m(i, c) = complex_from_json(data[static_cast<std::size_t>(idx)],
                                        context + ".data[" + std::to_string(idx) + "]");
    return m;
}

Json to_json(const ModuleVector& v) {
    return Json{{"m", v.m()}, {"d", v.d()}, {"mat", to_json(v.mat())}};
}

ModuleVector module_vector_from_json(const Json& j, const std::string& context) {
    const long m = positive_int(member(j, "m", context), context + ".m");
    const long d = positive_int(member(j, "d", context), context + ".d");
    ComplexMatrix mat = matrix_from_json(member(j, "mat", context), context + ".mat");
    if (mat.rows() != m || mat.cols() != d)
        throw ValidationError(context + ": mat is " + std::to_string(mat.rows()) + "x" +
                              std::to_string(mat.cols()) + " but (m,d) = (" + std::to_string(m) +
                              "," + std::to_string(d) + ")");
    return ModuleVector(ModuleSpec{static_cast<int>(m), static_cast<int>(d)}, std::move(mat));
}

Json to_json(const AlgebraElement& a) { return Json{{"d", a.d()}, {"mat", to_json(a.mat())}}; }

AlgebraElement algebra_element_from_json(const Json& j, const std::string& context) {
    const long d = positive_int(member(j, "d", context), context + ".d");
    ComplexMatrix mat = matrix_from_json(member(j, "mat", context), context + ".mat");
    if (mat.rows() != d || mat.cols() != d)
        throw ValidationError(context + ": mat is " + std::to_string(mat.rows()) + "x" +
                              std::to_string(mat.cols()) + " but d = " + std::to_string(d));
    return AlgebraElement(std::move(mat));
}

Json to_json(const InequalityInstance& inst) {
    Json vectors = Json::array();
    for (const auto& v : inst.vectors)
        vectors.push_back(to_json(v));
    Json coefficients = Json::array();
    for (const auto& a : inst.coefficients)
        coefficients.push_back(to_json(a));
    Json scalars = Json::array();
    for (const auto& z : inst.scalars)
        scalars.push_back(to_json(z));
    Json operators = Json::array();
    for (const auto& t : inst.operators)
        operators.push_back(to_json(t));
    return Json{{"id", std::string(to_tag(inst.id))}, {"vectors", std::move(vectors)},
                {"coefficients", std::move(coefficients)}, {"scalars", std::move(scalars)},
                {"operators", std::move(operators)}, {"meta", inst.meta}};
}

InequalityInstance instance_from_json(const Json& j) {
    const std::string context = "instance";
    const Json& id = member(j, "id", context);
    if (!id.is_string())
        throw ValidationError("instance.id: expected a tag string");
    InequalityInstance inst;
    inst.id = id_from_tag(id.get<std::string>());

    auto array_or_empty = [&](const char* key) -> const Json& {
        static const Json empty = Json::array();
        auto it = j.find(key);
        if (it == j.end())
            return empty;
        if (!it->is_array())
            throw ValidationError("instance." + std::string(key) + ": expected an array");
        return *it;
    };

    std::size_t idx = 0;
    for (const Json& v : array_or_empty("vectors"))
        inst.vectors.push_back(
            module_vector_from_json(v, "instance.vectors[" + std::to_string(idx++) + "]"));
    idx = 0;
    for (const Json& a : array_or_empty("coefficients"))
        inst.coefficients.push_back(algebra_element_from_json(
            a, "instance.coefficients[" + std::to_string(idx++) + "]"));
    idx = 0;
    for (const Json& z : array_or_empty("scalars"))
        inst.scalars.push_back(
            complex_from_json(z, "instance.scalars[" + std::to_string(idx++) + "]"));
    idx = 0;
    for (const Json& t : array_or_empty("operators"))
        inst.operators.push_back(
            matrix_from_json(t, "instance.operators[" + std::to_string(idx++) + "]"));

    if (auto it = j.find("meta"); it != j.end()) {
        if (!it->is_object())
            throw ValidationError("instance.meta: expected an object of strings");
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string())
                throw ValidationError("instance.meta." + key + ": expected a string");
            inst.meta[key] = value.get<std::string>();
        }
    }
    validate_instance(inst);
    return inst;
}

Json to_json(const GramSummary& g) {
    Json norms = Json::array();
    for (Eigen::Index i = 0; i < g.gram_norms.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < g.gram_norms.cols(); ++j)
            row.push_back(g.gram_norms(i, j));
        norms.push_back(std::move(row));
    }
    return Json{{"norms", std::move(norms)},
                {"row_sums", g.row_sums},
                {"max_row_sum", g.max_row_sum},
                {"max_row_index", g.max_row_index},
                {"max_diag", g.max_diag},
                {"max_diag_index", g.max_diag_index},
                {"offdiag_sq_sum", g.offdiag_sq_sum},
                {"max_offdiag", g.max_offdiag},
                {"max_offdiag_pair", Json::array({g.max_offdiag_row, g.max_offdiag_col})},
                {"max_offdiag_row_sq_sum", g.max_offdiag_row_sq_sum},
                {"max_offdiag_row_sq_index", g.max_offdiag_row_sq_index}};
}

Json to_json(const OrderReport& r) {
    return Json{{"holds", r.holds},
                {"min_eig_gap", r.min_eig_gap},
                {"rhs_scale", r.rhs_scale},
                {"relative_slack", r.relative_slack},
                {"near_equality", r.near_equality}};
}

Json to_json(const EvalReport& r) {
    Json out = to_json(r.result.order);
    out["id"] = std::string(to_tag(r.id));
    out["dims"] = r.dims;
    if (r.branch)
        out["branch"] = std::string(to_string(*r.branch));
    if (r.form) {
        out["form"] = *r.form == ScalarCombForm::squared ? "squared" : "as_printed";
        if (*r.form == ScalarCombForm::as_printed)
            out["experimental"] = true;
    }
    out["anti_hermitian_residual"] = r.result.anti_hermitian_residual;
    if (r.result.gram)
        out["gram"] = to_json(*r.result.gram);
    out["scalars"] = r.result.scalars;
    out["indices"] = r.result.indices;
    return out;
}

Json to_json(const GenConfig& cfg) {
    return Json{{"master_seed", cfg.master_seed},
                {"m", cfg.m},
                {"d", cfg.d},
                {"n", cfg.n},
                {"family", std::string(to_string(cfg.family))},
                {"coeffs", std::string(to_string(cfg.coeffs))},
                {"magnitude", cfg.magnitude}};
}

GenConfig gen_config_from_json(const Json& j) {
    GenConfig cfg;
    const std::string context = "gen_config";
    const Json& seed = member(j, "master_seed", context);
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
        throw ValidationError("gen_config.master_seed: expected an unsigned integer");
    cfg.master_seed = seed.get<std::uint64_t>();
    cfg.m = static_cast<int>(positive_int(member(j, "m", context), "gen_config.m"));
    cfg.d = static_cast<int>(positive_int(member(j, "d", context), "gen_config.d"));
    cfg.n = static_cast<int>(positive_int(member(j, "n", context), "gen_config.n"));
    cfg.family = family_kind_from_string(
        member(j, "family", context).get<std::string>());
    cfg.coeffs = coeff_kind_from_string(member(j, "coeffs", context).get<std::string>());
    cfg.magnitude = finite_number(member(j, "magnitude", context), "gen_config.magnitude");
    cfg.validate();
    return cfg;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text, const std::string& context) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError(context + ": invalid JSON");
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json_text(text, path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write file: " + path.string());
    out << dump_json(j);
    if (!out)
        throw Error("write failed: " + path.string());
}

} // namespace hmod
