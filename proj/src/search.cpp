#include "hmod/search.hpp"

#include <algorithm>
#include <cmath>

namespace hmod {

void SearchConfig::validate() const {
    if (restarts < 1 || steps_per_restart < 1 || patience < 1)
        throw ContractViolation("SearchConfig: restarts, steps and patience must be >= 1");
    if (!(shrink > 0.0) || !(shrink < 1.0))
        throw ContractViolation("SearchConfig: shrink must lie in (0, 1)");
    if (!(initial_step > 0.0) || !std::isfinite(initial_step))
        throw ContractViolation("SearchConfig: initial_step must be positive");
    GenConfig gen{seed, m, d, n, family, coeffs, magnitude};
    gen.validate();
}

namespace {

// Extra component offsets for the search's own streams, away from the
// generator's component indices.
constexpr std::uint64_t kRestartComponent = 1'000'000;
constexpr std::uint64_t kPerturbComponent = 2'000'000;

GenConfig restart_gen_config(const SearchConfig& cfg, int restart) {
    GenConfig gen;
    gen.master_seed = mix_seed(cfg.seed, kRestartComponent + static_cast<std::uint64_t>(restart));
    gen.m = cfg.m;
    gen.d = cfg.d;
    gen.n = cfg.n;
    gen.family = cfg.family;
    gen.coeffs = cfg.coeffs;
    gen.magnitude = cfg.magnitude;
    return gen;
}

void perturb(InstanceParams& params, double step, SplitMix64& rng) {
    for (auto& mat : params.mats)
        for (Eigen::Index j = 0; j < mat.cols(); ++j)
            for (Eigen::Index i = 0; i < mat.rows(); ++i)
                mat(i, j) += step * rng.next_complex_normal();
    for (auto& z : params.scalars)
        z += step * rng.next_complex_normal();
}

double slack_of(const GenConfig& gen, const SearchConfig& cfg, const InstanceParams& params,
                const ToleranceConfig& tol, InequalityInstance* keep) {
    InequalityInstance inst = build_instance(gen, cfg.ineq, params);
    if (cfg.branch)
        inst.meta["branch"] = std::string(to_string(*cfg.branch));
    const EvalReport report = evaluate(inst, tol);
    if (keep)
        *keep = std::move(inst);
    return report.result.order.relative_slack;
}

std::vector<TrajectoryPoint> downsample(const std::vector<TrajectoryPoint>& traj,
                                        std::size_t cap) {
    if (traj.size() <= cap)
        return traj;
    std::vector<TrajectoryPoint> out;
    out.reserve(cap);
    // keep first and last; stride through the middle
    const std::size_t body = cap - 2;
    out.push_back(traj.front());
    for (std::size_t k = 0; k < body; ++k) {
        const std::size_t idx = 1 + (k * (traj.size() - 2)) / body;
        out.push_back(traj[idx]);
    }
    out.push_back(traj.back());
    return out;
}

struct RestartOutcome {
    double best_slack = 0.0;
    InequalityInstance best_instance;
    std::vector<TrajectoryPoint> trajectory;
    long accepted = 0;
    double worst_slack = 0.0;
};

RestartOutcome run_restart(const SearchConfig& cfg, int restart, const ToleranceConfig& tol) {
    const GenConfig gen = restart_gen_config(cfg, restart);
    SplitMix64 rng(mix_seed(cfg.seed, kPerturbComponent + static_cast<std::uint64_t>(restart)));

    RestartOutcome out;
    InstanceParams params = draw_instance_params(gen, cfg.ineq);
    out.best_slack = slack_of(gen, cfg, params, tol, &out.best_instance);
    out.worst_slack = out.best_slack;
    out.trajectory.push_back({-1, out.best_slack});

    double step = cfg.initial_step;
    int consecutive_rejections = 0;
    for (int s = 0; s < cfg.steps_per_restart; ++s) {
        InstanceParams candidate = params;
        perturb(candidate, step, rng);
        InequalityInstance cand_inst;
        const double slack = slack_of(gen, cfg, candidate, tol, &cand_inst);
        out.worst_slack = std::min(out.worst_slack, slack);
        if (slack < out.best_slack) {
            params = std::move(candidate);
            out.best_slack = slack;
            out.best_instance = std::move(cand_inst);
            out.trajectory.push_back({s, slack});
            ++out.accepted;
            consecutive_rejections = 0;
        } else if (++consecutive_rejections >= cfg.patience) {
            step *= cfg.shrink;
            consecutive_rejections = 0;
        }
    }
    return out;
}

} // namespace

SearchResult search(const SearchConfig& cfg, const ToleranceConfig& tol) {
    cfg.validate();
    tol.validate();

    std::optional<RestartOutcome> best;
    int best_restart = 0;
    std::vector<RestartSummary> summaries;
    summaries.reserve(static_cast<std::size_t>(cfg.restarts));
    double worst = 0.0;
    for (int r = 0; r < cfg.restarts; ++r) {
        RestartOutcome outcome = run_restart(cfg, r, tol);
        summaries.push_back({r, outcome.best_slack, outcome.accepted});
        worst = std::min(worst, outcome.worst_slack);
        if (!best || outcome.best_slack < best->best_slack) {
            best = std::move(outcome);
            best_restart = r;
        }
    }
    (void)best_restart;
    SearchResult result{
        .best_slack = best->best_slack,
        .best_instance = std::move(best->best_instance),
        .trajectory = downsample(best->trajectory, 200),
        .restarts_summary = std::move(summaries),
        .alarm = worst < -tol.psd_rel_tol,
        .worst_slack = worst,
    };
    return result;
}

Json to_json(const SearchResult& r) {
    Json traj = Json::array();
    for (const auto& p : r.trajectory)
        traj.push_back(Json{{"step", p.step}, {"slack", p.slack}});
    Json restarts = Json::array();
    for (const auto& s : r.restarts_summary)
        restarts.push_back(
            Json{{"restart", s.restart}, {"best_slack", s.best_slack}, {"accepted", s.accepted}});
    return Json{{"best_slack", r.best_slack},
                {"best_instance", to_json(r.best_instance)},
                {"trajectory", std::move(traj)},
                {"restarts_summary", std::move(restarts)},
                {"alarm", r.alarm},
                {"worst_slack", r.worst_slack}};
}

SlackHistogram slack_histogram(const GenConfig& cfg, InequalityId ineq, long trials,
                               const ToleranceConfig& tol) {
    if (trials < 1)
        throw ContractViolation("slack_histogram: trials must be >= 1");
    cfg.validate();
    tol.validate();
    SlackHistogram hist;
    hist.trials = trials;
    std::vector<double> slacks;
    slacks.reserve(static_cast<std::size_t>(trials));
    for (long t = 0; t < trials; ++t) {
        GenConfig instance_cfg = cfg;
        instance_cfg.master_seed = mix_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
        const EvalReport report = evaluate(gen_instance(instance_cfg, ineq), tol);
        const double slack = report.result.order.relative_slack;
        slacks.push_back(slack);
        if (slack < -tol.psd_rel_tol)
            ++hist.alarms;
        std::size_t bin = 0;
        while (bin < SlackHistogram::kUpperEdges.size() &&
               slack >= SlackHistogram::kUpperEdges[bin])
            ++bin;
        ++hist.counts[bin];
    }
    std::sort(slacks.begin(), slacks.end());
    hist.min_slack = slacks.front();
    hist.max_slack = slacks.back();
    hist.median_slack = slacks[(slacks.size() - 1) / 2];
    return hist;
}

Json to_json(const SlackHistogram& h) {
    return Json{{"bin_upper_edges", Json::array({1e-6, 1e-4, 1e-2, 1e-1, 1.0, 10.0, "inf"})},
                {"counts", h.counts},
                {"alarms", h.alarms},
                {"trials", h.trials},
                {"min", h.min_slack},
                {"median", h.median_slack},
                {"max", h.max_slack}};
}

} // namespace hmod
