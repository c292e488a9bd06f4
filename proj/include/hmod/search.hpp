#pragma once

#include <array>
#include <optional>

#include "hmod/generate.hpp"
#include "hmod/json_io.hpp"

namespace hmod {

// Random-restart perturbation descent on relative_slack. Derivative-free:
// the min-eigenvalue objective is nonsmooth at eigenvalue crossings.
struct SearchConfig {
    InequalityId ineq = InequalityId::bessel_3_1;
    std::optional<Branch> branch;
    int restarts = 32;
    int steps_per_restart = 500;
    double initial_step = 0.1;
    double shrink = 0.7; // step multiplier after `patience` consecutive rejections
    int patience = 25;
    std::uint64_t seed = 0;
    int m = 4;
    int d = 2;
    int n = 2;
    FamilyKind family = FamilyKind::generic;
    CoeffKind coeffs = CoeffKind::generic;
    double magnitude = 1.0;

    void validate() const;
};

struct TrajectoryPoint {
    long step; // global step index within the winning restart; -1 for the start
    double slack;
};

struct RestartSummary {
    int restart;
    double best_slack;
    long accepted;
};

struct SearchResult {
    double best_slack;
    InequalityInstance best_instance;
    std::vector<TrajectoryPoint> trajectory; // winning restart, <= 200 points
    std::vector<RestartSummary> restarts_summary;
    bool alarm = false;           // an iterate violated beyond tolerance
    double worst_slack = 0.0;     // most negative slack seen anywhere
};

// Deterministic in the config; restarts are independent and the merged result
// equals the sequential one (best slack, ties to the lowest restart index).
SearchResult search(const SearchConfig& cfg, const ToleranceConfig& tol = {});

Json to_json(const SearchResult& r);

// Fixed bin edges: 0, 1e-6, 1e-4, 1e-2, 1e-1, 1, 10, inf. The first bin also
// absorbs slacks that are negative within tolerance; a genuine violation
// increments `alarms` instead.
struct SlackHistogram {
    static constexpr std::array<double, 6> kUpperEdges = {1e-6, 1e-4, 1e-2, 1e-1, 1.0, 10.0};
    std::array<long, 7> counts{};
    long alarms = 0;
    long trials = 0;
    double min_slack = 0.0;
    double median_slack = 0.0;
    double max_slack = 0.0;
};

SlackHistogram slack_histogram(const GenConfig& cfg, InequalityId ineq, long trials,
                               const ToleranceConfig& tol = {});

Json to_json(const SlackHistogram& h);

} // namespace hmod
