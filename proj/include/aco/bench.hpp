#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aco/config.hpp"
#include "aco/engine.hpp"

namespace aco::bench {

/// Multi-run experiment description: a config template, run count, base
/// seed, and optional gamma x q0 sweep axes (empty axis = the template's
/// value only).
struct Campaign {
    SolverConfig base;
    int runs = 1;
    std::uint64_t seed_base = 1;
    std::vector<double> gammas;
    std::vector<double> q0s;
    std::optional<double> best_known;  // enables success rate and gap

    void validate() const;
};

struct CellStats {
    double gamma = 0.0;
    double q0 = 0.0;
    int runs = 0;
    int failed_runs = 0;
    double mean_fitness = 0.0;
    double stddev_fitness = 0.0;  // population (divide by N)
    std::optional<double> success_rate;
    std::optional<double> mean_success_iteration;  // over successful runs only
    double mean_wall_time_s = 0.0;
    std::optional<double> average_gap_pct;
};

struct CampaignReport {
    std::vector<CellStats> cells;
};

/// Fraction of runs whose best fitness equals the optimum exactly
/// (maximization) or reaches it (minimization).
double success_rate(std::span<const RunResult> results, double optimum, Sense sense);

/// Mean first-success iteration over the runs that succeeded; absent when
/// none did.
std::optional<double> mean_success_iteration(std::span<const RunResult> results);

/// (best_known - mean best fitness) / best_known as a percentage.
double average_gap_pct(std::span<const RunResult> results, double best_known);

/// Runs with seeds seed_base+k. A failing run is reported on stderr and
/// yields a not-found result instead of aborting the batch.
std::vector<RunResult> run_batch(const SolverConfig& base, const AdapterFactory& factory,
                                 int runs, std::uint64_t seed_base, int threads = 0);

/// Aggregate statistics of one sweep cell.
CellStats summarize(std::span<const RunResult> results, std::optional<double> best_known,
                    Sense sense, double gamma, double q0);

/// Execute runs seeds seed_base+k per sweep cell. Seeds are identical across
/// cells so sweep contrasts are paired. A failing run is recorded and
/// excluded from the statistics without aborting the campaign.
CampaignReport run_campaign(const Campaign& campaign, const AdapterFactory& factory,
                            Sense sense, int threads = 0);

/// CSV with the fixed header gamma,q0,runs,mean_fitness,std_dev,success_rate,
/// mean_success_iter,mean_wall_time_s,avg_gap_pct; absent values are empty
/// fields.
std::string to_csv(const CampaignReport& report);
void emit_csv(const CampaignReport& report, const std::string& path);

std::string campaign_to_json_text(const Campaign& campaign);
Campaign campaign_from_json_text(const std::string& text);

}  // namespace aco::bench
