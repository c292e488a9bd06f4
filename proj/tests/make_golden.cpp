// Regenerates the committed golden files under tests/golden/. Run by hand
// after an intentional change to the generator or the report schema, then
// review the diff and commit.
#include <filesystem>
#include <iostream>

#include "hmod/json_io.hpp"
#include "hmod/search.hpp"

using namespace hmod;

int main() {
    const std::filesystem::path root = HMOD_GOLDEN_DIR;
    std::filesystem::create_directories(root / "instances");
    std::filesystem::create_directories(root / "reports");

    write_json_file(root / "module_vector_seed42_m4_d2.json",
                    to_json(gen_module_vector(42, 4, 2)));

    std::uint64_t seed = 1000;
    for (const auto& info : inequality_registry()) {
        GenConfig cfg;
        cfg.master_seed = ++seed;
        cfg.m = 6;
        cfg.d = 2;
        cfg.n = 3;
        cfg.family = default_family_for(info.id);
        const InequalityInstance inst = gen_instance(cfg, info.id);
        write_json_file(root / "instances" / (std::string(info.tag) + ".json"), to_json(inst));
        write_json_file(root / "reports" / (std::string(info.tag) + ".json"),
                        to_json(evaluate(inst, {})));
        std::cout << "golden " << info.tag << " written\n";
    }

    SearchConfig scfg;
    scfg.ineq = InequalityId::bombieri_3_3;
    scfg.m = 4;
    scfg.d = 1;
    scfg.n = 2;
    scfg.seed = 9;
    scfg.restarts = 8;
    scfg.steps_per_restart = 150;
    const SearchResult result = search(scfg, {});
    write_json_file(root / "search_bombieri_m4_d1_n2_seed9.json",
                    Json{{"best_slack", result.best_slack},
                         {"restarts", scfg.restarts},
                         {"steps_per_restart", scfg.steps_per_restart}});
    std::cout << "golden search regression written (best_slack = " << result.best_slack
              << ")\n";
    return 0;
}
