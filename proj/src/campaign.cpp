#include "hmod/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "hmod/version.hpp"

namespace hmod {

void CampaignConfig::validate() const {
    if (trials < 1)
        throw ContractViolation("campaign: trials must be >= 1");
    if (m < 1 || d < 1 || n < 1)
        throw ContractViolation("campaign: m, d, n must be positive");
    if (jobs < 0)
        throw ContractViolation("campaign: jobs must be >= 0");
    if (!(magnitude >= 0.0))
        throw ContractViolation("campaign: magnitude must be >= 0");
    tol.validate();
    if (family)
        for (InequalityId id : ids.empty() ? all_inequality_ids() : ids)
            if (!family_kind_compatible(id, *family))
                throw ContractViolation("campaign: family kind '" +
                                        std::string(to_string(*family)) +
                                        "' is incompatible with " + std::string(to_tag(id)));
}

int effective_n(InequalityId id, const CampaignConfig& cfg,
                std::optional<FamilyKind> family_override) {
    const FamilyKind family = family_override.value_or(default_family_for(id));
    const bool block_family =
        family == FamilyKind::orthogonal || family == FamilyKind::unit_orthogonal ||
        (family == FamilyKind::near_parallel && id == InequalityId::bessel_3_1);
    int n = cfg.n;
    switch (id) {
    case InequalityId::bessel_3_1:
    case InequalityId::remark_3_12:
        if (block_family)
            n = std::min(n, std::max(1, cfg.m / cfg.d));
        break;
    case InequalityId::orth_ranges_3_5:
        n = std::min(n, cfg.m); // n <= k = m
        break;
    default:
        if (block_family)
            n = std::min(n, std::max(1, cfg.m / cfg.d));
        break;
    }
    return n;
}

namespace {

struct Slot {
    InstanceRecord record{};
    Json failure_instance; // null unless the comparison failed
    std::exception_ptr error;
};

GenConfig instance_config(const CampaignConfig& cfg, InequalityId id, long tag_offset,
                          long trial) {
    GenConfig gen;
    gen.master_seed =
        mix_seed(cfg.seed, static_cast<std::uint64_t>(tag_offset) +
                               static_cast<std::uint64_t>(trial));
    gen.m = cfg.m;
    gen.d = cfg.d;
    gen.n = effective_n(id, cfg, cfg.family);
    gen.family = cfg.family.value_or(default_family_for(id));
    gen.coeffs = cfg.coeffs.value_or(CoeffKind::generic);
    gen.magnitude = cfg.magnitude;
    return gen;
}

std::optional<Branch> branch_for(const CampaignConfig& cfg, InequalityId id, long trial) {
    if (!inequality_info(id).has_branches)
        return std::nullopt;
    if (cfg.branch)
        return *cfg.branch;
    return trial % 2 == 0 ? Branch::first : Branch::second; // alternate for coverage
}

} // namespace

bool CampaignReport::any_failure() const { return total_failures() > 0; }

long CampaignReport::total_failures() const {
    long total = 0;
    for (const auto& tag : per_inequality)
        total += tag.failures;
    return total;
}

CampaignReport run_campaign(const CampaignConfig& cfg, bool keep_records) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::vector<InequalityId> ids = cfg.ids.empty() ? all_inequality_ids() : cfg.ids;

    // Every (tag, trial) pair gets a stable global index; per-instance seeds
    // derive from it, so scheduling cannot change any output.
    const long per_tag = cfg.trials;
    const long total = static_cast<long>(ids.size()) * per_tag;
    std::vector<Slot> slots(static_cast<std::size_t>(total));

    auto work = [&](long global_index) {
        Slot& slot = slots[static_cast<std::size_t>(global_index)];
        const std::size_t tag_idx = static_cast<std::size_t>(global_index / per_tag);
        const long trial = global_index % per_tag;
        const InequalityId id = ids[tag_idx];
        try {
            const GenConfig gen = instance_config(cfg, id, tag_idx * per_tag, trial);
            InequalityInstance inst = gen_instance(gen, id);
            if (auto b = branch_for(cfg, id, trial))
                inst.meta["branch"] = std::string(to_string(*b));
            const EvalReport report = evaluate(inst, cfg.tol);
            const OrderReport& order = report.result.order;
            slot.record = InstanceRecord{
                .index = trial,
                .seed = gen.master_seed,
                .holds = order.holds,
                .min_eig_gap = order.min_eig_gap,
                .relative_slack = order.relative_slack,
                .near_equality = order.near_equality,
            };
            if (!order.holds)
                slot.failure_instance = to_json(inst);
        } catch (...) {
            slot.error = std::current_exception();
        }
    };

    unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(total));
    if (jobs <= 1) {
        for (long g = 0; g < total; ++g)
            work(g);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (long g = next.fetch_add(1); g < total; g = next.fetch_add(1))
                    work(g);
            });
        for (auto& th : pool)
            th.join();
    }

    // first error by global index wins, deterministically
    for (const auto& slot : slots)
        if (slot.error)
            std::rethrow_exception(slot.error);

    CampaignReport report;
    report.tool_version = kToolVersion;
    Json echo;
    Json id_list = Json::array();
    for (InequalityId id : ids)
        id_list.push_back(std::string(to_tag(id)));
    echo["ineq"] = std::move(id_list);
    echo["m"] = cfg.m;
    echo["d"] = cfg.d;
    echo["n"] = cfg.n;
    echo["trials"] = cfg.trials;
    echo["seed"] = cfg.seed;
    echo["magnitude"] = cfg.magnitude;
    echo["family"] = cfg.family ? Json(std::string(to_string(*cfg.family))) : Json(nullptr);
    echo["coeffs"] = cfg.coeffs ? Json(std::string(to_string(*cfg.coeffs))) : Json(nullptr);
    echo["branch"] = cfg.branch ? Json(std::string(to_string(*cfg.branch))) : Json(nullptr);
    echo["psd_rel_tol"] = cfg.tol.psd_rel_tol;
    echo["hermitian_tol"] = cfg.tol.hermitian_tol;
    echo["equality_rel_tol"] = cfg.tol.equality_rel_tol;
    report.config_echo = std::move(echo);

    for (std::size_t tag_idx = 0; tag_idx < ids.size(); ++tag_idx) {
        TagReport tag;
        tag.id = ids[tag_idx];
        tag.m = cfg.m;
        tag.d = cfg.d;
        tag.requested_n = cfg.n;
        tag.n = effective_n(tag.id, cfg, cfg.family);
        tag.trials = per_tag;
        bool first = true;
        for (long trial = 0; trial < per_tag; ++trial) {
            const Slot& slot =
                slots[static_cast<std::size_t>(tag_idx) * static_cast<std::size_t>(per_tag) +
                      static_cast<std::size_t>(trial)];
            const InstanceRecord& rec = slot.record;
            if (rec.holds)
                ++tag.passes;
            else {
                ++tag.failures;
                if (tag.failure_instances.size() < 10)
                    tag.failure_instances.push_back(slot.failure_instance);
            }
            if (rec.near_equality)
                ++tag.near_equality_count;
            if (first || rec.relative_slack < tag.min_relative_slack)
                tag.min_relative_slack = rec.relative_slack;
            first = false;
            if (keep_records)
                tag.records.push_back(rec);
        }
        report.per_inequality.push_back(std::move(tag));
    }

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Json to_json(const CampaignReport& report) {
    Json tags = Json::array();
    for (const auto& tag : report.per_inequality) {
        Json t{{"id", std::string(to_tag(tag.id))},
               {"m", tag.m},
               {"d", tag.d},
               {"n", tag.n},
               {"requested_n", tag.requested_n},
               {"trials", tag.trials},
               {"passes", tag.passes},
               {"failures", tag.failures},
               {"near_equality_count", tag.near_equality_count},
               {"min_relative_slack", tag.min_relative_slack}};
        if (!tag.failure_instances.empty())
            t["failure_instances"] = tag.failure_instances;
        tags.push_back(std::move(t));
    }
    return Json{{"tool_version", report.tool_version},
                {"config", report.config_echo},
                {"per_inequality", std::move(tags)},
                {"wall_time_seconds", report.wall_time_seconds}};
}

std::string campaign_csv(const CampaignReport& report) {
    std::ostringstream os;
    os << "id,seed,m,d,n,index,min_eig_gap,relative_slack,holds\n";
    os.precision(17);
    for (const auto& tag : report.per_inequality)
        for (const auto& rec : tag.records)
            os << to_tag(tag.id) << ',' << rec.seed << ',' << tag.m << ',' << tag.d << ','
               << tag.n << ',' << rec.index << ',' << rec.min_eig_gap << ','
               << rec.relative_slack << ',' << (rec.holds ? 1 : 0) << '\n';
    return os.str();
}

} // namespace hmod
