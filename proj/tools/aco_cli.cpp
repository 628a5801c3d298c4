// Command-line front end: solve, sweep, gen-mmppfo, verify, oracle.
//
// Exit codes: 0 success, 2 usage/parse/input error, 3 solver contract
// violation, 4 infeasible solution in verify.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aco/bench.hpp"
#include "aco/dynamic_impact.hpp"
#include "aco/engine.hpp"
#include "aco/mkp.hpp"
#include "aco/mmppfo.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitContract = 3;
constexpr int kExitInfeasible = 4;

int env_threads() {
    const char* value = std::getenv("ACO_THREADS");
    if (!value) return 0;
    const int threads = std::atoi(value);
    return threads > 0 ? threads : 0;
}

struct SolveOptions {
    std::string problem;
    std::string instance_path;
    std::string out_path;
    aco::SolverConfig config;
    int runs = 1;
    std::optional<double> target;
    bool stop_on_target = false;
    CLI::App* app = nullptr;
};

void add_solver_flags(CLI::App* cmd, SolveOptions& opt) {
    cmd->add_option("--problem", opt.problem, "Problem family: mkp or mmppfo")
        ->required()
        ->check(CLI::IsMember({"mkp", "mmppfo"}));
    cmd->add_option("--instance", opt.instance_path, "Instance file path")->required();
    cmd->add_option("--alpha", opt.config.alpha, "Pheromone exponent");
    cmd->add_option("--beta", opt.config.beta, "Heuristic exponent");
    cmd->add_option("--gamma", opt.config.gamma, "Dynamic-impact exponent (0 disables)");
    cmd->add_option("--rho", opt.config.rho, "Evaporation/deposit rate in (0,1)");
    cmd->add_option("--q0", opt.config.q0, "Exploitation probability in [0,1)");
    cmd->add_option("--tau-max", opt.config.tau_max, "Upper pheromone bound");
    cmd->add_option("--tau-min", opt.config.tau_min, "Lower pheromone bound");
    cmd->add_option("--iterations", opt.config.iterations, "Search iterations");
    cmd->add_option("--parallel-ants", opt.config.parallel_ants, "Concurrent ants per iteration");
    cmd->add_option("--sequential-ants", opt.config.sequential_ants,
                    "Solutions each parallel ant builds per iteration");
    cmd->add_option("--seed", opt.config.seed, "Base random seed");
    cmd->add_option("--runs", opt.runs, "Independent runs (seeds seed, seed+1, ...)");
    cmd->add_option("--target", opt.target,
                    "Fitness that counts as success (defaults to the instance optimum)");
    cmd->add_flag("--stop-on-target", opt.stop_on_target, "Stop a run once the target is met");
    cmd->add_option("--out", opt.out_path, "Write the best solution as JSON");
    opt.app = cmd;
}

// The published best configurations per problem, applied only where the user
// did not pass a value.
void apply_problem_defaults(SolveOptions& opt) {
    auto defaulted = [&](const char* flag) { return opt.app->count(flag) == 0; };
    if (defaulted("--iterations")) opt.config.iterations = 3000;
    if (defaulted("--parallel-ants")) opt.config.parallel_ants = 8;
    if (defaulted("--sequential-ants")) opt.config.sequential_ants = 2;
    if (defaulted("--seed")) opt.config.seed = 1;
    if (opt.problem == "mkp") {
        if (defaulted("--gamma")) opt.config.gamma = 8.0;
        if (defaulted("--q0")) opt.config.q0 = 0.01;
    } else {
        if (defaulted("--gamma")) opt.config.gamma = 4.0;
        if (defaulted("--q0")) opt.config.q0 = 0.06;
    }
    opt.config.stop_on_target = opt.stop_on_target;
    if (opt.target) opt.config.target_fitness = opt.target;
}

void print_cell(const aco::bench::CellStats& cell) {
    std::printf("gamma=%g q0=%g runs=%d mean_fitness=%.6f std_dev=%.6f", cell.gamma, cell.q0,
                cell.runs, cell.mean_fitness, cell.stddev_fitness);
    if (cell.success_rate) std::printf(" success_rate=%.4f", *cell.success_rate);
    if (cell.mean_success_iteration)
        std::printf(" mean_success_iter=%.2f", *cell.mean_success_iteration);
    if (cell.average_gap_pct) std::printf(" avg_gap_pct=%.2f", *cell.average_gap_pct);
    std::printf(" mean_wall_time_s=%.3f\n", cell.mean_wall_time_s);
}

struct LoadedProblem {
    aco::AdapterFactory factory;
    aco::Sense sense = aco::Sense::maximize;
    std::optional<double> best_known;
    std::shared_ptr<aco::mkp::MkpInstance> mkp;
    std::shared_ptr<aco::mmppfo::MmppfoInstance> mmppfo;
    std::shared_ptr<const aco::mmppfo::SearchSpace> space;
};

LoadedProblem load_problem(const std::string& problem, const std::string& path) {
    LoadedProblem loaded;
    if (problem == "mkp") {
        loaded.mkp = std::make_shared<aco::mkp::MkpInstance>(aco::mkp::load_mkp(path));
        loaded.best_known = loaded.mkp->known_optimum;
        loaded.sense = aco::Sense::maximize;
        auto inst = loaded.mkp;
        loaded.factory = [inst]() -> std::unique_ptr<aco::ProblemAdapter> {
            return std::make_unique<aco::mkp::MkpAdapter>(*inst);
        };
    } else {
        loaded.mmppfo =
            std::make_shared<aco::mmppfo::MmppfoInstance>(aco::mmppfo::load_instance(path));
        loaded.space = std::make_shared<const aco::mmppfo::SearchSpace>(
            aco::mmppfo::build_search_space(*loaded.mmppfo));
        loaded.sense = aco::Sense::minimize;
        auto inst = loaded.mmppfo;
        auto space = loaded.space;
        loaded.factory = [inst, space]() -> std::unique_ptr<aco::ProblemAdapter> {
            return std::make_unique<aco::mmppfo::MmppfoAdapter>(*inst, space);
        };
    }
    return loaded;
}

json solution_to_json(const LoadedProblem& loaded, const SolveOptions& opt,
                      const std::vector<aco::RunResult>& results, const aco::RunResult& best) {
    json doc;
    doc["problem"] = opt.problem;
    doc["instance"] = opt.instance_path;
    doc["best_fitness"] = best.best_fitness;
    if (opt.problem == "mkp") {
        doc["items"] = best.best_solution;
    } else {
        json edges = json::array();
        for (auto id : best.best_solution) {
            const auto& e = loaded.space->edges[id];
            json je;
            je["lot"] = e.lot;
            if (e.order >= 0)
                je["order"] = e.order;
            else
                je["order"] = nullptr;
            je["week"] = e.week;
            je["fab"] = e.fab;
            je["kind"] = aco::mmppfo::to_string(e.kind);
            edges.push_back(std::move(je));
        }
        doc["edges"] = std::move(edges);
    }
    json runs = json::array();
    for (std::size_t k = 0; k < results.size(); ++k) {
        json jr;
        jr["seed"] = opt.config.seed + k;
        jr["found"] = results[k].found;
        jr["best_fitness"] = results[k].best_fitness;
        if (results[k].first_success_iteration)
            jr["first_success_iteration"] = *results[k].first_success_iteration;
        runs.push_back(std::move(jr));
    }
    doc["runs"] = std::move(runs);
    return doc;
}

int cmd_solve(SolveOptions& opt) {
    apply_problem_defaults(opt);
    opt.config.validate();
    auto loaded = load_problem(opt.problem, opt.instance_path);
    std::optional<double> target = opt.target ? opt.target : loaded.best_known;
    if (target) opt.config.target_fitness = target;

    const auto results = aco::bench::run_batch(opt.config, loaded.factory, opt.runs,
                                               opt.config.seed, env_threads());
    const auto cell =
        aco::bench::summarize(results, target, loaded.sense, opt.config.gamma, opt.config.q0);
    std::printf("problem=%s instance=%s\n", opt.problem.c_str(), opt.instance_path.c_str());
    print_cell(cell);
    if (cell.failed_runs > 0) {
        std::fprintf(stderr, "solver contract violation in %d run(s)\n", cell.failed_runs);
        return kExitContract;
    }

    const aco::RunResult* best = nullptr;
    for (const auto& r : results) {
        if (!r.found) continue;
        if (!best || aco::better(r.best_fitness, best->best_fitness, loaded.sense)) best = &r;
    }
    if (best && !opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        if (!out) {
            std::fprintf(stderr, "cannot write %s\n", opt.out_path.c_str());
            return kExitUsage;
        }
        out << solution_to_json(loaded, opt, results, *best).dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_sweep(SolveOptions& opt, std::vector<double>& gammas, std::vector<double>& q0s) {
    apply_problem_defaults(opt);
    if (gammas.empty() || q0s.empty()) {
        std::fprintf(stderr, "sweep requires non-empty --gammas and --q0s lists\n");
        return kExitUsage;
    }
    opt.config.validate();
    auto loaded = load_problem(opt.problem, opt.instance_path);

    aco::bench::Campaign campaign;
    campaign.base = opt.config;
    campaign.runs = opt.runs;
    campaign.seed_base = opt.config.seed;
    campaign.gammas = gammas;
    campaign.q0s = q0s;
    campaign.best_known = opt.target ? opt.target : loaded.best_known;

    const auto report =
        aco::bench::run_campaign(campaign, loaded.factory, loaded.sense, env_threads());
    const std::string path = opt.out_path.empty() ? "sweep.csv" : opt.out_path;
    aco::bench::emit_csv(report, path);
    std::printf("wrote %zu cells to %s\n", report.cells.size(), path.c_str());
    for (const auto& cell : report.cells) print_cell(cell);
    for (const auto& cell : report.cells)
        if (cell.failed_runs > 0) return kExitContract;
    return kExitOk;
}

int cmd_gen(const aco::mmppfo::GeneratorParams& params, const std::string& out_path) {
    const auto instance = aco::mmppfo::generate_dataset(params);
    aco::mmppfo::save_instance(instance, out_path);
    std::printf("wrote %zu wafer-lots, %zu orders, %zu capacity cells to %s\n",
                instance.wafer_lots.size(), instance.orders.size(), instance.capacities.size(),
                out_path.c_str());
    std::printf("tightness %.3f\n", aco::mmppfo::tightness(params));
    return kExitOk;
}

int cmd_verify(const std::string& problem, const std::string& instance_path,
               const std::string& solution_path) {
    std::ifstream in(solution_path);
    if (!in) {
        std::fprintf(stderr, "cannot open solution file: %s\n", solution_path.c_str());
        return kExitUsage;
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        std::fprintf(stderr, "invalid solution JSON: %s\n", e.what());
        return kExitUsage;
    }

    if (problem == "mkp") {
        const auto inst = aco::mkp::load_mkp(instance_path);
        if (!doc.contains("items")) {
            std::fprintf(stderr, "solution file lacks an \"items\" array\n");
            return kExitUsage;
        }
        const auto items = doc.at("items").get<std::vector<std::size_t>>();
        const auto check = aco::mkp::check_solution(inst, items);
        if (!check.feasible) {
            std::printf("infeasible: %s\n", check.violation.c_str());
            return kExitInfeasible;
        }
        std::printf("feasible\nfitness %.6f\n", check.fitness);
        return kExitOk;
    }

    const auto inst = aco::mmppfo::load_instance(instance_path);
    if (!doc.contains("edges")) {
        std::fprintf(stderr, "solution file lacks an \"edges\" array\n");
        return kExitUsage;
    }
    aco::mmppfo::Assignment schedule;
    for (const auto& je : doc.at("edges")) {
        aco::mmppfo::ScheduleEdge edge;
        edge.lot = je.at("lot").get<int>();
        edge.order = je.at("order").is_null() ? -1 : je.at("order").get<int>();
        edge.week = je.at("week").get<int>();
        edge.fab = je.at("fab").get<int>();
        edge.kind = aco::mmppfo::move_kind_from_string(je.at("kind").get<std::string>());
        schedule.push_back(edge);
    }
    const auto check = aco::mmppfo::check_schedule(inst, schedule);
    if (!check.feasible) {
        std::printf("infeasible: %s\n", check.violation.c_str());
        return kExitInfeasible;
    }
    std::printf("feasible\nfitness %d\n", check.fitness);
    return kExitOk;
}

int cmd_oracle(bool table1, const std::string& problem, const std::string& instance_path) {
    if (table1) {
        const auto routes = aco::di::example_routes();
        for (double fuel : aco::di::example_fuel_levels())
            for (const auto& route : routes)
                std::printf("%.6f\n", aco::di::route_dynamic_impact(route, fuel));
        return kExitOk;
    }
    if (problem != "mkp" || instance_path.empty()) {
        std::fprintf(stderr, "oracle needs --table1 or --problem mkp --instance PATH\n");
        return kExitUsage;
    }
    const auto inst = aco::mkp::load_mkp(instance_path);
    if (inst.n > 24) {
        std::fprintf(stderr, "oracle refuses n > 24 (got n = %zu)\n", inst.n);
        return kExitUsage;
    }
    const auto best = aco::mkp::brute_force_optimum(inst);
    std::printf("optimum %.6f\nitems", best.profit);
    for (auto item : best.items) std::printf(" %zu", item);
    std::printf("\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Min-max ant system solver with dynamic-impact candidate evaluation"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    auto* solve = app.add_subcommand("solve", "Run the solver on one instance");
    add_solver_flags(solve, solve_opt);

    SolveOptions sweep_opt;
    std::vector<double> gammas, q0s;
    auto* sweep = app.add_subcommand("sweep", "Gamma x q0 grid sweep, CSV output");
    add_solver_flags(sweep, sweep_opt);
    sweep->add_option("--gammas", gammas, "Comma-separated gamma axis")->delimiter(',')->required();
    sweep->add_option("--q0s", q0s, "Comma-separated q0 axis")->delimiter(',')->required();

    aco::mmppfo::GeneratorParams gen_params;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-mmppfo", "Generate a synthetic scheduling instance");
    gen->add_option("--wafer-lots", gen_params.wafer_lot_count, "Number of wafer-lots");
    gen->add_option("--total-wafers", gen_params.total_wafers, "Sum of lot quantities");
    gen->add_option("--periods", gen_params.periods, "Number of capacity weeks");
    gen->add_option("--orders", gen_params.order_count, "Number of orders");
    gen->add_option("--quantity-min", gen_params.quantity_min, "Smallest lot quantity");
    gen->add_option("--quantity-max", gen_params.quantity_max, "Largest lot quantity");
    gen->add_option("--total-capacity", gen_params.total_capacity, "Sum of cell capacities");
    gen->add_option("--total-demand", gen_params.total_demand, "Sum of order demands");
    gen->add_option("--seed", gen_params.seed, "Generator seed");
    gen->add_option("--out", gen_out, "Instance JSON output path")->required();

    std::string verify_problem, verify_instance, verify_solution;
    auto* verify = app.add_subcommand("verify", "Re-check a solution independently");
    verify->add_option("--problem", verify_problem, "Problem family: mkp or mmppfo")
        ->required()
        ->check(CLI::IsMember({"mkp", "mmppfo"}));
    verify->add_option("--instance", verify_instance, "Instance file path")->required();
    verify->add_option("--solution", verify_solution, "Solution JSON path")->required();

    bool table1 = false;
    std::string oracle_problem, oracle_instance;
    auto* oracle = app.add_subcommand("oracle", "Exact reference values");
    oracle->add_flag("--table1", table1, "Print the nine route-example impact values");
    oracle->add_option("--problem", oracle_problem, "Problem family (mkp only)");
    oracle->add_option("--instance", oracle_instance, "Instance file path (n <= 24)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_opt);
        if (sweep->parsed()) return cmd_sweep(sweep_opt, gammas, q0s);
        if (gen->parsed()) return cmd_gen(gen_params, gen_out);
        if (verify->parsed()) return cmd_verify(verify_problem, verify_instance, verify_solution);
        if (oracle->parsed()) return cmd_oracle(table1, oracle_problem, oracle_instance);
    } catch (const aco::contract_violation& e) {
        std::fprintf(stderr, "contract violation: %s\n", e.what());
        return kExitContract;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
