#include <doctest.h>

#include "hmod/json_io.hpp"

using namespace hmod;

TEST_CASE("complex scalars encode as [re, im] and round-trip") {
    const Complex z(1.0 / 3.0, -2.5e-17);
    const Json j = to_json(z);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(complex_from_json(j, "z") == z);
    CHECK_THROWS_AS(complex_from_json(Json::array({1.0}), "z"), ValidationError);
    CHECK_THROWS_AS(complex_from_json(Json::parse("[1, \"x\"]"), "z"), ValidationError);
}

TEST_CASE("matrices serialize row-major and round-trip bit-exactly") {
    ComplexMatrix m(2, 3);
    m << Complex(1, 2), Complex(1.0 / 3.0, 0), Complex(0, -7e100), Complex(4, 0),
        Complex(-0.25, 1e-300), Complex(0, 0);
    const Json j = to_json(m);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 3);
    // row-major: entry (0,1) is data[1]
    CHECK(complex_from_json(j["data"][1], "e") == m(0, 1));
    const ComplexMatrix back = matrix_from_json(j, "m");
    CHECK(back.rows() == 2);
    CHECK(back.cols() == 3);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index c = 0; c < 3; ++c)
            CHECK(back(i, c) == m(i, c)); // exact
    // text round trip is stable
    CHECK(dump_json(to_json(back)) == dump_json(j));
}

TEST_CASE("malformed matrices are rejected with precise messages") {
    CHECK_THROWS_WITH_AS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}}, "m"),
                         doctest::Contains("missing field 'data'"), ValidationError);
    CHECK_THROWS_WITH_AS(
        matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"data", Json::array()}}, "m"),
        doctest::Contains("expected 4"), ValidationError);
    CHECK_THROWS_AS(
        matrix_from_json(Json{{"rows", 0}, {"cols", 2}, {"data", Json::array()}}, "m"),
        ValidationError);
    Json inf_mat{{"rows", 1}, {"cols", 1}, {"data", Json::array({Json::array({1.0, 2.0})})}};
    inf_mat["data"][0][0] = "oops";
    CHECK_THROWS_AS(matrix_from_json(inf_mat, "m"), ValidationError);
}

TEST_CASE("module vectors and algebra elements round-trip with shape checks") {
    const ModuleVector v = gen_module_vector(5, 4, 2);
    const ModuleVector v2 = module_vector_from_json(to_json(v), "v");
    CHECK(v2.m() == 4);
    CHECK(v2.d() == 2);
    CHECK(max_abs(v2.mat() - v.mat()) == 0.0);

    Json bad = to_json(v);
    bad["m"] = 5;
    CHECK_THROWS_AS(module_vector_from_json(bad, "v"), ValidationError);

    const AlgebraElement a = gen_algebra_element(6, 3);
    const AlgebraElement a2 = algebra_element_from_json(to_json(a), "a");
    CHECK(max_abs(a2.mat() - a.mat()) == 0.0);
}

TEST_CASE("instances round-trip and validate on load") {
    GenConfig cfg;
    cfg.master_seed = 99;
    cfg.m = 6;
    cfg.d = 2;
    cfg.n = 3;
    for (const auto& info : inequality_registry()) {
        GenConfig c = cfg;
        c.family = default_family_for(info.id);
        const InequalityInstance inst = gen_instance(c, info.id);
        const Json j = to_json(inst);
        const InequalityInstance back = instance_from_json(j);
        CHECK(dump_json(to_json(back)) == dump_json(j));
    }

    // missing and extra fields are both reported
    Json j = to_json(gen_instance(cfg, InequalityId::cauchy_schwarz));
    j["scalars"].push_back(Json::array({1.0, 0.0}));
    CHECK_THROWS_WITH_AS(instance_from_json(j), doctest::Contains("extra field: scalars"),
                         ValidationError);
    CHECK_THROWS_AS(instance_from_json(Json{{"id", "nope"}}), ValidationError);
    CHECK_THROWS_AS(parse_json_text("{not json", "ctx"), ValidationError);
}

TEST_CASE("gen configs mirror their fields") {
    GenConfig cfg;
    cfg.master_seed = 0xFFFFFFFFFFFFFFFFULL; // full 64-bit width survives
    cfg.m = 8;
    cfg.d = 2;
    cfg.n = 4;
    cfg.family = FamilyKind::unit_orthogonal;
    cfg.coeffs = CoeffKind::unitary;
    cfg.magnitude = 0.5;
    const GenConfig back = gen_config_from_json(to_json(cfg));
    CHECK(back.master_seed == cfg.master_seed);
    CHECK(back.m == cfg.m);
    CHECK(back.n == cfg.n);
    CHECK(back.family == cfg.family);
    CHECK(back.coeffs == cfg.coeffs);
    CHECK(back.magnitude == cfg.magnitude);
}

TEST_CASE("reports carry the documented fields") {
    GenConfig cfg;
    cfg.master_seed = 7;
    cfg.m = 6;
    cfg.d = 2;
    cfg.n = 3;
    const EvalReport rep = evaluate(gen_instance(cfg, InequalityId::mpf_3_8), {});
    const Json j = to_json(rep);
    for (const char* key : {"id", "dims", "holds", "min_eig_gap", "rhs_scale", "relative_slack",
                            "near_equality", "gram", "anti_hermitian_residual", "scalars",
                            "indices"})
        CHECK(j.contains(key));
    CHECK(j["id"] == "mpf_3_8");
    CHECK(j["dims"]["m"] == 6);

    cfg.family = default_family_for(InequalityId::bn_lemma_3_10);
    InequalityInstance bn = gen_instance(cfg, InequalityId::bn_lemma_3_10);
    bn.meta["branch"] = "second";
    CHECK(to_json(evaluate(bn, {}))["branch"] == "second");
}
