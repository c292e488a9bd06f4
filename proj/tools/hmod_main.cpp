#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hmod/campaign.hpp"
#include "hmod/search.hpp"
#include "hmod/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInequalityFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitSearchAlarm = 4;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HMOD_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw hmod::ValidationError("HMOD_SEED is not a valid unsigned integer: " +
                                        std::string(env));
        }
    }
    return 0;
}

std::vector<hmod::InequalityId> parse_ids(const std::vector<std::string>& tags) {
    if (tags.empty())
        return hmod::all_inequality_ids();
    std::vector<hmod::InequalityId> ids;
    ids.reserve(tags.size());
    for (const auto& tag : tags)
        ids.push_back(hmod::id_from_tag(tag));
    return ids;
}

hmod::ToleranceConfig resolve_tolerances(const std::optional<double>& psd_override,
                                         const std::string& tol_config_path) {
    hmod::ToleranceConfig tol;
    if (!tol_config_path.empty()) {
        const hmod::Json j = hmod::read_json_file(tol_config_path);
        if (j.contains("psd_rel_tol"))
            tol.psd_rel_tol = j["psd_rel_tol"].get<double>();
        if (j.contains("hermitian_tol"))
            tol.hermitian_tol = j["hermitian_tol"].get<double>();
        if (j.contains("equality_rel_tol"))
            tol.equality_rel_tol = j["equality_rel_tol"].get<double>();
    }
    if (psd_override)
        tol.psd_rel_tol = *psd_override;
    tol.validate();
    return tol;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw hmod::Error("cannot write file: " + path);
    out << text;
}

struct VerifyOptions {
    std::vector<std::string> tags;
    int m = 4, d = 2, n = 2;
    long trials = 100;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::string tol_config;
    std::optional<std::string> family;
    std::optional<std::string> coeffs;
    std::optional<std::string> branch;
    double magnitude = 1.0;
    std::string out, csv;
    int jobs = 0;
};

int run_verify(const VerifyOptions& opt) {
    hmod::CampaignConfig cfg;
    cfg.ids = parse_ids(opt.tags);
    cfg.m = opt.m;
    cfg.d = opt.d;
    cfg.n = opt.n;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed ? *opt.seed : default_seed();
    cfg.magnitude = opt.magnitude;
    cfg.jobs = opt.jobs;
    cfg.tol = resolve_tolerances(opt.tol, opt.tol_config);
    if (opt.family)
        cfg.family = hmod::family_kind_from_string(*opt.family);
    if (opt.coeffs)
        cfg.coeffs = hmod::coeff_kind_from_string(*opt.coeffs);
    if (opt.branch)
        cfg.branch = hmod::branch_from_string(*opt.branch);

    const hmod::CampaignReport report = hmod::run_campaign(cfg, !opt.csv.empty());

    std::cout << "hmod verify: " << report.per_inequality.size() << " inequalities x "
              << cfg.trials << " trials, seed " << cfg.seed << ", dims m=" << cfg.m
              << " d=" << cfg.d << " n=" << cfg.n << "\n";
    long passes = 0;
    for (const auto& tag : report.per_inequality) {
        passes += tag.passes;
        std::cout << "  " << hmod::to_tag(tag.id) << ": trials=" << tag.trials
                  << " passes=" << tag.passes << " failures=" << tag.failures
                  << " near_equality=" << tag.near_equality_count
                  << " min_slack=" << tag.min_relative_slack;
        if (tag.n != tag.requested_n)
            std::cout << " (n clamped to " << tag.n << ")";
        std::cout << "\n";
    }
    std::cout << "TOTAL: " << passes << " passes, " << report.total_failures() << " failures, "
              << report.wall_time_seconds << " s\n";

    if (!opt.out.empty())
        hmod::write_json_file(opt.out, hmod::to_json(report));
    if (!opt.csv.empty())
        write_text(opt.csv, hmod::campaign_csv(report));
    return report.any_failure() ? kExitInequalityFailure : kExitOk;
}

struct CaseOptions {
    std::string file;
    std::optional<double> tol;
    std::string tol_config;
    std::string out;
};

int run_case(const CaseOptions& opt) {
    const hmod::ToleranceConfig tol = resolve_tolerances(opt.tol, opt.tol_config);
    const hmod::InequalityInstance inst =
        hmod::instance_from_json(hmod::read_json_file(opt.file));
    const hmod::EvalReport report = hmod::evaluate(inst, tol);
    hmod::Json j = hmod::to_json(report);
    j["tool_version"] = hmod::kToolVersion;
    const std::string text = hmod::dump_json(j);
    std::cout << text;
    if (!opt.out.empty())
        write_text(opt.out, text);
    return report.result.order.holds ? kExitOk : kExitInequalityFailure;
}

struct SearchOptions {
    std::string tag = "bessel_3_1";
    int m = 4, d = 2, n = 2;
    int restarts = 32;
    int steps = 500;
    double initial_step = 0.1;
    double shrink = 0.7;
    int patience = 25;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::string tol_config;
    std::optional<std::string> family;
    std::optional<std::string> coeffs;
    std::optional<std::string> branch;
    double magnitude = 1.0;
    std::string out;
};

int run_search(const SearchOptions& opt) {
    hmod::SearchConfig cfg;
    cfg.ineq = hmod::id_from_tag(opt.tag);
    cfg.m = opt.m;
    cfg.d = opt.d;
    cfg.n = opt.n;
    cfg.restarts = opt.restarts;
    cfg.steps_per_restart = opt.steps;
    cfg.initial_step = opt.initial_step;
    cfg.shrink = opt.shrink;
    cfg.patience = opt.patience;
    cfg.seed = opt.seed ? *opt.seed : default_seed();
    cfg.magnitude = opt.magnitude;
    cfg.family = opt.family ? hmod::family_kind_from_string(*opt.family)
                            : hmod::default_family_for(cfg.ineq);
    if (opt.coeffs)
        cfg.coeffs = hmod::coeff_kind_from_string(*opt.coeffs);
    if (opt.branch)
        cfg.branch = hmod::branch_from_string(*opt.branch);
    const hmod::ToleranceConfig tol = resolve_tolerances(opt.tol, opt.tol_config);

    const hmod::SearchResult result = hmod::search(cfg, tol);
    hmod::Json j = hmod::to_json(result);
    j["tool_version"] = hmod::kToolVersion;
    const std::string text = hmod::dump_json(j);
    std::cout << text;
    if (!opt.out.empty())
        write_text(opt.out, text);
    return result.alarm ? kExitSearchAlarm : kExitOk;
}

int run_list(bool as_json) {
    if (as_json) {
        hmod::Json out = hmod::Json::array();
        for (const auto& info : hmod::inequality_registry())
            out.push_back(hmod::Json{{"tag", std::string(info.tag)},
                                     {"citation", std::string(info.citation)},
                                     {"statement", std::string(info.statement)},
                                     {"fields", std::string(info.fields)},
                                     {"branches", info.has_branches}});
        std::cout << hmod::dump_json(out);
        return kExitOk;
    }
    for (const auto& info : hmod::inequality_registry()) {
        std::cout << info.tag << "\n    " << info.citation << ": " << info.statement
                  << "\n    fields: " << info.fields << "\n";
        if (info.has_branches)
            std::cout << "    branches: first | second\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loewner-order verification of Bessel-type inequalities on matrix Hilbert "
                 "modules"};
    app.set_version_flag("--version", hmod::kToolVersion);
    app.require_subcommand(1);

    const auto dim_range = CLI::Range(1, 128);
    const auto count_range = CLI::Range(1L, 100'000'000L);

    VerifyOptions vo;
    CLI::App* verify = app.add_subcommand("verify", "Run a seeded verification campaign");
    verify->add_option("--ineq", vo.tags, "Inequality tags (default: all 13)");
    verify->add_option("--m", vo.m, "Module rows m")->check(dim_range);
    verify->add_option("--d", vo.d, "Algebra dimension d")->check(dim_range);
    verify->add_option("--n", vo.n, "Family size n")->check(dim_range);
    verify->add_option("--trials", vo.trials, "Instances per inequality")->check(count_range);
    verify->add_option("--seed", vo.seed, "Master seed (default: HMOD_SEED or 0)");
    verify->add_option("--tol", vo.tol, "Override psd_rel_tol");
    verify->add_option("--tol-config", vo.tol_config, "Full tolerance profile (JSON file)");
    verify->add_option("--family", vo.family,
                       "generic | orthogonal | unit_orthogonal | near_parallel");
    verify->add_option("--coeffs", vo.coeffs, "generic | unitary | scalar_identity | zero");
    verify->add_option("--branch", vo.branch, "first | second (branchy ids alternate otherwise)");
    verify->add_option("--magnitude", vo.magnitude, "Scale of generated entries")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--out", vo.out, "Write the JSON report here");
    verify->add_option("--csv", vo.csv, "Write per-instance rows here");
    verify->add_option("--jobs", vo.jobs, "Worker threads (default: available parallelism)")
        ->check(CLI::Range(0, 1024));

    CaseOptions co;
    CLI::App* case_cmd = app.add_subcommand("case", "Evaluate one instance file");
    case_cmd->add_option("--file", co.file, "InequalityInstance JSON file")->required();
    case_cmd->add_option("--tol", co.tol, "Override psd_rel_tol");
    case_cmd->add_option("--tol-config", co.tol_config, "Full tolerance profile (JSON file)");
    case_cmd->add_option("--out", co.out, "Write the report here as well");

    SearchOptions so;
    CLI::App* search_cmd = app.add_subcommand("search", "Minimize relative slack");
    search_cmd->add_option("--ineq", so.tag, "Inequality tag")->required();
    search_cmd->add_option("--m", so.m, "Module rows m")->check(dim_range);
    search_cmd->add_option("--d", so.d, "Algebra dimension d")->check(dim_range);
    search_cmd->add_option("--n", so.n, "Family size n")->check(dim_range);
    search_cmd->add_option("--restarts", so.restarts, "Independent restarts")
        ->check(CLI::Range(1, 100000));
    search_cmd->add_option("--steps", so.steps, "Steps per restart")->check(CLI::Range(1, 10000000));
    search_cmd->add_option("--initial-step", so.initial_step, "Initial perturbation step")
        ->check(CLI::PositiveNumber);
    search_cmd->add_option("--shrink", so.shrink, "Step shrink factor in (0,1)");
    search_cmd->add_option("--patience", so.patience, "Rejections before shrinking")
        ->check(CLI::Range(1, 1000000));
    search_cmd->add_option("--seed", so.seed, "Master seed (default: HMOD_SEED or 0)");
    search_cmd->add_option("--tol", so.tol, "Override psd_rel_tol");
    search_cmd->add_option("--tol-config", so.tol_config, "Full tolerance profile (JSON file)");
    search_cmd->add_option("--family", so.family, "Family kind (default: per inequality)");
    search_cmd->add_option("--coeffs", so.coeffs, "Coefficient kind");
    search_cmd->add_option("--branch", so.branch, "first | second");
    search_cmd->add_option("--magnitude", so.magnitude, "Scale of generated entries")
        ->check(CLI::NonNegativeNumber);
    search_cmd->add_option("--out", so.out, "Write the JSON result here");

    bool list_json = false;
    CLI::App* list_cmd = app.add_subcommand("list", "List the inequality catalogue");
    list_cmd->add_flag("--json", list_json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return kExitUsage;
    }

    try {
        if (*verify)
            return run_verify(vo);
        if (*case_cmd)
            return run_case(co);
        if (*search_cmd)
            return run_search(so);
        if (*list_cmd)
            return run_list(list_json);
    } catch (const hmod::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const hmod::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hmod::PreconditionViolation& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hmod::ContractViolation& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
