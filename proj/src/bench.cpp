#include "aco/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace aco::bench {

void Campaign::validate() const {
    base.validate();
    if (runs < 1) throw std::invalid_argument("campaign runs must be >= 1");
}

double success_rate(std::span<const RunResult> results, double optimum, Sense sense) {
    if (results.empty()) return 0.0;
    int hits = 0;
    for (const auto& r : results) {
        if (!r.found) continue;
        if (sense == Sense::maximize ? r.best_fitness == optimum : r.best_fitness <= optimum) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(results.size());
}

std::optional<double> mean_success_iteration(std::span<const RunResult> results) {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : results) {
        if (r.first_success_iteration) {
            sum += *r.first_success_iteration;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / count;
}

double average_gap_pct(std::span<const RunResult> results, double best_known) {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : results) {
        if (!r.found) continue;
        sum += r.best_fitness;
        ++count;
    }
    const double mean = count > 0 ? sum / count : 0.0;
    return (best_known - mean) / best_known * 100.0;
}

std::vector<RunResult> run_batch(const SolverConfig& base, const AdapterFactory& factory,
                                 int runs, std::uint64_t seed_base, int threads) {
    std::vector<RunResult> results;
    results.reserve(runs);
    SolverConfig config = base;
    for (int k = 0; k < runs; ++k) {
        config.seed = seed_base + static_cast<std::uint64_t>(k);
        try {
            results.push_back(run(factory, config, threads));
        } catch (const std::exception& e) {
            std::cerr << "bench: run with seed " << config.seed << " failed: " << e.what() << '\n';
            results.emplace_back();  // found = false marks the failure
        }
    }
    return results;
}

CellStats summarize(std::span<const RunResult> results, std::optional<double> best_known,
                    Sense sense, double gamma, double q0) {
    CellStats cell;
    cell.gamma = gamma;
    cell.q0 = q0;
    cell.runs = static_cast<int>(results.size());

    double sum = 0.0, wall = 0.0;
    int completed = 0;
    for (const auto& r : results) {
        if (!r.found) {
            ++cell.failed_runs;
            continue;
        }
        sum += r.best_fitness;
        wall += r.wall_time_s;
        ++completed;
    }
    if (completed > 0) {
        cell.mean_fitness = sum / completed;
        double var = 0.0;
        for (const auto& r : results) {
            if (!r.found) continue;
            const double d = r.best_fitness - cell.mean_fitness;
            var += d * d;
        }
        cell.stddev_fitness = std::sqrt(var / completed);
        cell.mean_wall_time_s = wall / completed;
    }
    if (best_known) {
        cell.success_rate = success_rate(results, *best_known, sense);
        cell.mean_success_iteration = mean_success_iteration(results);
        if (sense == Sense::maximize) cell.average_gap_pct = average_gap_pct(results, *best_known);
    }
    return cell;
}

CampaignReport run_campaign(const Campaign& campaign, const AdapterFactory& factory,
                            Sense sense, int threads) {
    campaign.validate();
    const std::vector<double> gammas = campaign.gammas.empty()
                                           ? std::vector<double>{campaign.base.gamma}
                                           : campaign.gammas;
    const std::vector<double> q0s =
        campaign.q0s.empty() ? std::vector<double>{campaign.base.q0} : campaign.q0s;

    CampaignReport report;
    for (double gamma : gammas) {
        for (double q0 : q0s) {
            SolverConfig config = campaign.base;
            config.gamma = gamma;
            config.q0 = q0;
            if (campaign.best_known && !config.target_fitness)
                config.target_fitness = campaign.best_known;
            const auto results = run_batch(config, factory, campaign.runs, campaign.seed_base, threads);
            report.cells.push_back(summarize(results, campaign.best_known, sense, gamma, q0));
        }
    }
    return report;
}

namespace {

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

}  // namespace

std::string to_csv(const CampaignReport& report) {
    std::string out =
        "gamma,q0,runs,mean_fitness,std_dev,success_rate,mean_success_iter,mean_wall_time_s,"
        "avg_gap_pct\n";
    for (const auto& cell : report.cells) {
        out += fmt("%g", cell.gamma) + ',' + fmt("%g", cell.q0) + ',' + std::to_string(cell.runs) +
               ',' + fmt("%.6f", cell.mean_fitness) + ',' + fmt("%.6f", cell.stddev_fitness) + ',';
        if (cell.success_rate) out += fmt("%.4f", *cell.success_rate);
        out += ',';
        if (cell.mean_success_iteration) out += fmt("%.2f", *cell.mean_success_iteration);
        out += ',';
        out += fmt("%.6f", cell.mean_wall_time_s);
        out += ',';
        if (cell.average_gap_pct) out += fmt("%.2f", *cell.average_gap_pct);
        out += '\n';
    }
    return out;
}

void emit_csv(const CampaignReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV file: " + path);
    out << to_csv(report);
    if (!out) throw std::runtime_error("error while writing CSV file: " + path);
}

namespace {

using nlohmann::json;

json config_to_json(const SolverConfig& c) {
    json j;
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    j["gamma"] = c.gamma;
    j["rho"] = c.rho;
    j["q0"] = c.q0;
    j["tau_max"] = c.tau_max;
    j["tau_min"] = c.tau_min;
    j["iterations"] = c.iterations;
    j["parallel_ants"] = c.parallel_ants;
    j["sequential_ants"] = c.sequential_ants;
    j["seed"] = c.seed;
    if (c.target_fitness) j["target_fitness"] = *c.target_fitness;
    j["stop_on_target"] = c.stop_on_target;
    return j;
}

SolverConfig config_from_json(const json& j) {
    SolverConfig c;
    c.alpha = j.value("alpha", c.alpha);
    c.beta = j.value("beta", c.beta);
    c.gamma = j.value("gamma", c.gamma);
    c.rho = j.value("rho", c.rho);
    c.q0 = j.value("q0", c.q0);
    c.tau_max = j.value("tau_max", c.tau_max);
    c.tau_min = j.value("tau_min", c.tau_min);
    c.iterations = j.value("iterations", c.iterations);
    c.parallel_ants = j.value("parallel_ants", c.parallel_ants);
    c.sequential_ants = j.value("sequential_ants", c.sequential_ants);
    c.seed = j.value("seed", c.seed);
    if (j.contains("target_fitness")) c.target_fitness = j.at("target_fitness").get<double>();
    c.stop_on_target = j.value("stop_on_target", c.stop_on_target);
    return c;
}

}  // namespace

std::string campaign_to_json_text(const Campaign& campaign) {
    json j;
    j["config"] = config_to_json(campaign.base);
    j["runs"] = campaign.runs;
    j["seed_base"] = campaign.seed_base;
    if (!campaign.gammas.empty()) j["gammas"] = campaign.gammas;
    if (!campaign.q0s.empty()) j["q0s"] = campaign.q0s;
    if (campaign.best_known) j["best_known"] = *campaign.best_known;
    return j.dump(2);
}

Campaign campaign_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("invalid campaign JSON: ") + e.what());
    }
    Campaign campaign;
    if (j.contains("config")) campaign.base = config_from_json(j.at("config"));
    campaign.runs = j.value("runs", campaign.runs);
    campaign.seed_base = j.value("seed_base", campaign.seed_base);
    if (j.contains("gammas")) campaign.gammas = j.at("gammas").get<std::vector<double>>();
    if (j.contains("q0s")) campaign.q0s = j.at("q0s").get<std::vector<double>>();
    if (j.contains("best_known")) campaign.best_known = j.at("best_known").get<double>();
    campaign.validate();
    return campaign;
}

}  // namespace aco::bench
