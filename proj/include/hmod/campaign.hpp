#pragma once

#include <optional>

#include "hmod/generate.hpp"
#include "hmod/json_io.hpp"

namespace hmod {

// One verification campaign: seeded instances per inequality, evaluated in
// parallel, reduced deterministically (output is a pure function of the
// content-determining config, independent of the job count).
struct CampaignConfig {
    std::vector<InequalityId> ids; // empty -> all 13 tags
    int m = 4;
    int d = 2;
    int n = 2;
    long trials = 100;
    std::uint64_t seed = 0;
    std::optional<FamilyKind> family; // per-id default when unset
    std::optional<CoeffKind> coeffs;  // generic when unset
    std::optional<Branch> branch;     // branchy ids alternate when unset
    double magnitude = 1.0;
    int jobs = 0; // 0 -> hardware concurrency
    ToleranceConfig tol;

    void validate() const;
};

struct InstanceRecord {
    long index;
    std::uint64_t seed;
    bool holds;
    double min_eig_gap;
    double relative_slack;
    bool near_equality;
};

struct TagReport {
    InequalityId id;
    int m, d, n;     // effective dims
    int requested_n; // before any feasibility clamp
    long trials = 0;
    long passes = 0;
    long failures = 0;
    long near_equality_count = 0;
    double min_relative_slack = 0.0;
    std::vector<Json> failure_instances;  // full instances, capped at 10
    std::vector<InstanceRecord> records;  // populated when keep_records
};

struct CampaignReport {
    std::string tool_version;
    Json config_echo;
    std::vector<TagReport> per_inequality;
    double wall_time_seconds = 0.0;

    bool any_failure() const;
    long total_failures() const;
};

// Family-constrained ids clamp n to floor(m/d) when the requested profile is
// infeasible, so every profile covers every tag; both values are reported.
int effective_n(InequalityId id, const CampaignConfig& cfg,
                std::optional<FamilyKind> family_override);

CampaignReport run_campaign(const CampaignConfig& cfg, bool keep_records = false);

Json to_json(const CampaignReport& report);
std::string campaign_csv(const CampaignReport& report);

} // namespace hmod
