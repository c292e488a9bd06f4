#include <doctest.h>

#include "hmod/campaign.hpp"

using namespace hmod;

TEST_CASE("campaign: counts are consistent and seeds determine content") {
    CampaignConfig cfg;
    cfg.m = 6;
    cfg.d = 2;
    cfg.n = 3;
    cfg.trials = 20;
    cfg.seed = 42;
    const CampaignReport a = run_campaign(cfg);
    CHECK(a.per_inequality.size() == 13);
    for (const auto& tag : a.per_inequality) {
        CHECK(tag.passes + tag.failures == tag.trials);
        CHECK(tag.failures == 0);
        CHECK((tag.failure_instances.empty() == (tag.failures == 0)));
    }
    const CampaignReport b = run_campaign(cfg);
    Json ja = to_json(a), jb = to_json(b);
    ja.erase("wall_time_seconds");
    jb.erase("wall_time_seconds");
    CHECK(dump_json(ja) == dump_json(jb));
}

TEST_CASE("campaign: job count does not change the report") {
    CampaignConfig cfg;
    cfg.ids = {InequalityId::mpf_3_8, InequalityId::bn_lemma_3_10};
    cfg.m = 6;
    cfg.d = 2;
    cfg.n = 3;
    cfg.trials = 25;
    cfg.seed = 7;
    CampaignConfig seq = cfg;
    seq.jobs = 1;
    CampaignConfig par = cfg;
    par.jobs = 4;
    Json ja = to_json(run_campaign(seq, true));
    Json jb = to_json(run_campaign(par, true));
    ja.erase("wall_time_seconds");
    jb.erase("wall_time_seconds");
    CHECK(dump_json(ja) == dump_json(jb));
    CHECK(campaign_csv(run_campaign(seq, true)) == campaign_csv(run_campaign(par, true)));
}

TEST_CASE("campaign: infeasible profile clamps n for the block-family ids") {
    CampaignConfig cfg;
    cfg.m = 6;
    cfg.d = 3;
    cfg.n = 3; // n*d = 9 > m
    cfg.trials = 5;
    cfg.seed = 11;
    const CampaignReport report = run_campaign(cfg);
    for (const auto& tag : report.per_inequality) {
        if (tag.id == InequalityId::bessel_3_1 || tag.id == InequalityId::remark_3_12) {
            CHECK(tag.n == 2);
            CHECK(tag.requested_n == 3);
        }
        CHECK(tag.failures == 0);
    }
}

TEST_CASE("campaign: zero coefficients yield near-equality everywhere it applies") {
    CampaignConfig cfg;
    cfg.ids = {InequalityId::bombieri_3_3, InequalityId::orth_ranges_3_5,
               InequalityId::scalar_comb_3_7};
    cfg.m = 6;
    cfg.d = 2;
    cfg.n = 3;
    cfg.trials = 10;
    cfg.coeffs = CoeffKind::zero;
    const CampaignReport report = run_campaign(cfg);
    for (const auto& tag : report.per_inequality)
        CHECK(tag.near_equality_count == tag.trials);
}

TEST_CASE("campaign: csv rows carry one line per instance") {
    CampaignConfig cfg;
    cfg.ids = {InequalityId::cauchy_schwarz};
    cfg.trials = 7;
    const std::string csv = campaign_csv(run_campaign(cfg, true));
    long lines = 0;
    for (char ch : csv)
        if (ch == '\n')
            ++lines;
    CHECK(lines == 8); // header + 7 rows
    CHECK(csv.rfind("id,seed,m,d,n,index,min_eig_gap,relative_slack,holds\n", 0) == 0);
}

TEST_CASE("campaign: incompatible family override is rejected") {
    CampaignConfig cfg;
    cfg.family = FamilyKind::near_parallel; // remark_3_12 cannot accept this
    CHECK_THROWS_AS(run_campaign(cfg), ContractViolation);
    cfg.ids = {InequalityId::lemma_3_2};
    const CampaignReport report = run_campaign(cfg); // fine for lemma
    CHECK(report.per_inequality.size() == 1);
}

TEST_CASE("campaign: branch override and alternation are recorded deterministically") {
    CampaignConfig cfg;
    cfg.ids = {InequalityId::bn_lemma_3_10};
    cfg.m = 6;
    cfg.d = 2;
    cfg.n = 3;
    cfg.trials = 8;
    const CampaignReport alt = run_campaign(cfg);
    CHECK(alt.per_inequality[0].failures == 0);
    cfg.branch = Branch::second;
    const CampaignReport fixed = run_campaign(cfg);
    CHECK(fixed.per_inequality[0].failures == 0);
    CHECK(to_json(fixed)["config"]["branch"] == "second");
}
