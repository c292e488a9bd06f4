#include <doctest.h>

#include <fstream>

#include "hmod/search.hpp"

using namespace hmod;

namespace {
const std::string kGoldenDir = HMOD_GOLDEN_DIR;
}

TEST_CASE("search: parseval configuration reaches machine-zero slack") {
    SearchConfig cfg;
    cfg.ineq = InequalityId::bessel_3_1;
    cfg.m = 4;
    cfg.d = 1;
    cfg.n = 4;
    cfg.family = FamilyKind::unit_orthogonal;
    cfg.restarts = 2;
    cfg.steps_per_restart = 20;
    cfg.seed = 1;
    const SearchResult result = search(cfg, {});
    CHECK(result.best_slack <= 1e-9);
    CHECK_FALSE(result.alarm);
}

TEST_CASE("search: lemma 3.2 probe stays at the equality manifold") {
    SearchConfig cfg;
    cfg.ineq = InequalityId::lemma_3_2;
    cfg.d = 3;
    cfg.family = FamilyKind::near_parallel;   // b = a
    cfg.coeffs = CoeffKind::scalar_identity;  // c = I
    cfg.restarts = 2;
    cfg.steps_per_restart = 50;
    cfg.seed = 5;
    const SearchResult result = search(cfg, {});
    CHECK(result.best_slack <= 1e-9);
    CHECK_FALSE(result.alarm);
}

TEST_CASE("search: determinism and monotone accepted trajectory") {
    SearchConfig cfg;
    cfg.ineq = InequalityId::lemma_3_2;
    cfg.d = 2;
    cfg.restarts = 3;
    cfg.steps_per_restart = 60;
    cfg.seed = 5;
    const SearchResult a = search(cfg, {});
    const SearchResult b = search(cfg, {});
    CHECK(dump_json(to_json(a)) == dump_json(to_json(b)));
    for (std::size_t i = 1; i < a.trajectory.size(); ++i)
        CHECK(a.trajectory[i].slack < a.trajectory[i - 1].slack);
    CHECK(a.restarts_summary.size() == 3);
}

TEST_CASE("search: descent makes progress on a generic inequality") {
    SearchConfig cfg;
    cfg.ineq = InequalityId::bombieri_3_3;
    cfg.m = 4;
    cfg.d = 1;
    cfg.n = 2;
    cfg.restarts = 4;
    cfg.steps_per_restart = 120;
    cfg.seed = 9;
    const SearchResult result = search(cfg, {});
    CHECK_FALSE(result.alarm);
    CHECK(result.best_slack >= -1e-9);
    REQUIRE(!result.trajectory.empty());
    CHECK(result.best_slack < result.trajectory.front().slack);
    // every iterate stayed valid; the winning instance still validates
    validate_instance(result.best_instance);
    const EvalReport report = evaluate(result.best_instance, {});
    CHECK(report.result.order.relative_slack == doctest::Approx(result.best_slack));
}

TEST_CASE("search: golden regression for the bombieri profile") {
    std::ifstream in(kGoldenDir + "/search_bombieri_m4_d1_n2_seed9.json");
    REQUIRE_MESSAGE(bool(in), "missing golden search file");
    const Json golden = Json::parse(in);
    SearchConfig cfg;
    cfg.ineq = InequalityId::bombieri_3_3;
    cfg.m = 4;
    cfg.d = 1;
    cfg.n = 2;
    cfg.seed = 9;
    cfg.restarts = golden["restarts"].get<int>();
    cfg.steps_per_restart = golden["steps_per_restart"].get<int>();
    const SearchResult result = search(cfg, {});
    const double expected = golden["best_slack"].get<double>();
    CHECK(result.best_slack == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("search: trajectory is capped at 200 points") {
    SearchConfig cfg;
    cfg.ineq = InequalityId::cauchy_schwarz;
    cfg.m = 4;
    cfg.d = 2;
    cfg.restarts = 1;
    cfg.steps_per_restart = 4000;
    cfg.initial_step = 0.02;
    cfg.seed = 77;
    const SearchResult result = search(cfg, {});
    CHECK(result.trajectory.size() <= 200);
}

TEST_CASE("slack_histogram: degenerate and seeded cases") {
    GenConfig cfg;
    cfg.master_seed = 1;
    cfg.m = 6;
    cfg.d = 2;
    cfg.n = 3;
    cfg.coeffs = CoeffKind::zero;
    const SlackHistogram zeros = slack_histogram(cfg, InequalityId::bombieri_3_3, 50);
    CHECK(zeros.counts[0] == 50);
    CHECK(zeros.alarms == 0);
    CHECK(zeros.min_slack == 0.0);
    CHECK(zeros.max_slack == 0.0);

    cfg.coeffs = CoeffKind::generic;
    const SlackHistogram single = slack_histogram(cfg, InequalityId::bombieri_3_3, 1);
    CHECK(single.trials == 1);
    CHECK(single.min_slack == single.max_slack);
    CHECK(single.min_slack == single.median_slack);

    GenConfig bessel_cfg;
    bessel_cfg.master_seed = 1;
    bessel_cfg.m = 6;
    bessel_cfg.d = 2;
    bessel_cfg.n = 3;
    bessel_cfg.family = FamilyKind::unit_orthogonal;
    const SlackHistogram b = slack_histogram(bessel_cfg, InequalityId::bessel_3_1, 500);
    CHECK(b.min_slack >= -1e-9);
    CHECK(b.alarms == 0);
    long total = 0;
    for (long c : b.counts)
        total += c;
    CHECK(total == 500);
}
