#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dcpsp/harness.hpp"
#include "dcpsp/heuristic.hpp"
#include "dcpsp/milp.hpp"
#include "dcpsp/scenario.hpp"
#include "dcpsp/solver.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kValidationFailure = 2;
constexpr int kTimeoutNoIncumbent = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dcpsp::Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dcpsp::Error("cannot write " + path);
    out << bytes;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace dcpsp;

    CLI::App app{"dcpsp: cloudlet placement scenarios, solvers, and benchmarks"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a scenario file");
    std::string gen_params, gen_out;
    std::uint64_t gen_seed = 0;
    std::optional<int> gen_locations, gen_services, gen_horizon;
    bool gen_no_remote = false, gen_remote_replaces = false;
    gen->add_option("--params", gen_params, "generator params JSON file");
    gen->add_option("--seed", gen_seed, "rng seed")->required();
    gen->add_option("--out", gen_out, "output scenario path")->required();
    gen->add_option("--locations", gen_locations, "number of locations");
    gen->add_option("--services", gen_services, "number of services");
    gen->add_option("--horizon", gen_horizon, "number of time slots");
    gen->add_flag("--no-remote", gen_no_remote, "omit the remote cloud");
    gen->add_flag("--remote-replaces-cloudlet", gen_remote_replaces,
                  "remote cloud takes the first location's cloudlet slot");

    // solve
    auto* slv = app.add_subcommand("solve", "solve a scenario");
    std::string slv_scenario, slv_solver = "exact", slv_out;
    double slv_budget = 60.0, slv_rho = 0.8;
    slv->add_option("--scenario", slv_scenario, "scenario file")->required();
    slv->add_option("--solver", slv_solver, "exact|heu1|heu2")
        ->check(CLI::IsMember({"exact", "heu1", "heu2"}));
    slv->add_option("--time-budget", slv_budget, "seconds, exact solver only");
    slv->add_option("--rho", slv_rho, "heu2 budget fraction");
    slv->add_option("--out", slv_out, "write the solution JSON here");

    // validate
    auto* val = app.add_subcommand("validate", "check a solution against a scenario");
    std::string val_scenario, val_solution;
    val->add_option("--scenario", val_scenario, "scenario file")->required();
    val->add_option("--solution", val_solution, "solution file")->required();

    // export-mps
    auto* mps = app.add_subcommand("export-mps", "write the MILP in MPS format");
    std::string mps_scenario, mps_out;
    mps->add_option("--scenario", mps_scenario, "scenario file")->required();
    mps->add_option("--out", mps_out, "output MPS path")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
    std::string bench_config, bench_dir;
    bench->add_option("--config", bench_config, "experiment config JSON")->required();
    bench->add_option("--out-dir", bench_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kOk : kUsageError;
    }

    try {
        if (*gen) {
            GeneratorParams p;
            if (!gen_params.empty()) p = params_from_json(slurp(gen_params));
            if (gen_locations) p.n_locations = *gen_locations;
            if (gen_services) p.n_services = *gen_services;
            if (gen_horizon) p.horizon = *gen_horizon;
            if (gen_no_remote) p.include_remote_cloud = false;
            if (gen_remote_replaces) p.remote_replaces_cloudlet = true;
            p.seed = gen_seed;
            spill(gen_out, write_scenario(generate(p)));
            std::cout << "wrote " << gen_out << "\n";
            return kOk;
        }
        if (*slv) {
            Scenario sc = read_scenario(slurp(slv_scenario));
            Solution sol;
            Money total = 0;
            std::string status;
            if (slv_solver == "exact") {
                SolveLimits lim;
                lim.time_budget_s = slv_budget;
                SolveReport rep = solve(sc, lim);
                status = to_string(rep.status);
                if (rep.status != SolveStatus::Optimal &&
                    !validate(sc, rep.solution).empty()) {
                    std::cerr << "no incumbent within the time budget\n";
                    return kTimeoutNoIncumbent;
                }
                sol = rep.solution;
                total = rep.objective;
                std::cout << "status " << status << ", objective " << total
                          << ", bound " << rep.best_bound << ", nodes " << rep.nodes
                          << "\n";
            } else {
                Strategy st;
                st.variant = slv_solver == "heu1" ? HeuristicVariant::Heu1
                                                  : HeuristicVariant::Heu2;
                st.rho = slv_rho;
                auto res = heuristic_solve(sc, st);
                sol = res.solution;
                total = res.cost.total;
                std::cout << "status feasible, cost " << total << "\n";
            }
            if (!slv_out.empty()) spill(slv_out, write_solution(sc, sol));
            return kOk;
        }
        if (*val) {
            Scenario sc = read_scenario(slurp(val_scenario));
            Solution sol = read_solution(sc, slurp(val_solution));
            auto violations = validate(sc, sol);
            if (violations.empty()) {
                CostBreakdown c = evaluate_cost(sc, sol);
                std::cout << "valid, total cost " << c.total << "\n";
                return kOk;
            }
            for (const auto& v : violations) {
                std::cout << v.tag << " (";
                const char* dims[] = {"d", "u", "s", "t"};
                bool first = true;
                for (int i = 0; i < 4; ++i)
                    if (v.idx[i] >= 0) {
                        if (!first) std::cout << ", ";
                        std::cout << dims[i] << "=" << v.idx[i];
                        first = false;
                    }
                std::cout << ") slack " << v.slack << "\n";
            }
            return kValidationFailure;
        }
        if (*mps) {
            Scenario sc = read_scenario(slurp(mps_scenario));
            spill(mps_out, export_mps(build_milp(sc)));
            std::cout << "wrote " << mps_out << "\n";
            return kOk;
        }
        if (*bench) {
            ExperimentConfig cfg = config_from_json(slurp(bench_config));
            auto results = run_experiment(cfg);
            auto groups = summarize(results);
            std::filesystem::create_directories(bench_dir);
            auto in_dir = [&](const char* name) {
                return (std::filesystem::path(bench_dir) / name).string();
            };
            spill(in_dir("results.csv"), results_csv(results));
            spill(in_dir("summary.csv"), summary_csv(groups));
            spill(in_dir("runtime.svg"), emit_chart(groups, ChartKind::RuntimeLog));
            spill(in_dir("cost_ratio.svg"), emit_chart(groups, ChartKind::CostRatio));
            std::cout << "wrote " << results.size() << " result rows to " << bench_dir
                      << "\n";
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
