#include "aco/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <iostream>
#include <mutex>
#include <thread>

namespace aco {
namespace {

double pw(double base, double exponent) {
    if (exponent == 0.0) return 1.0;
    if (exponent == 1.0) return base;
    return std::pow(base, exponent);
}

// Fixed set of threads re-running an indexed job each round. Results must be
// written to per-index slots by the job itself, so scheduling never matters.
class WorkerPool {
public:
    explicit WorkerPool(int threads) {
        threads = std::max(threads, 1);
        for (int t = 0; t < threads; ++t) threads_.emplace_back([this] { worker_loop(); });
    }

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    ~WorkerPool() {
        {
            std::lock_guard lk(mu_);
            stop_ = true;
        }
        cv_work_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void run_jobs(int job_count, const std::function<void(int)>& job) {
        std::unique_lock lk(mu_);
        job_ = &job;
        job_count_ = job_count;
        next_job_.store(0, std::memory_order_relaxed);
        finished_workers_ = 0;
        ++generation_;
        cv_work_.notify_all();
        cv_done_.wait(lk, [&] { return finished_workers_ == static_cast<int>(threads_.size()); });
        job_ = nullptr;
        if (error_) {
            auto err = error_;
            error_ = nullptr;
            std::rethrow_exception(err);
        }
    }

private:
    void worker_loop() {
        std::uint64_t seen = 0;
        std::unique_lock lk(mu_);
        for (;;) {
            cv_work_.wait(lk, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            const auto* job = job_;
            const int count = job_count_;
            lk.unlock();
            int i;
            while ((i = next_job_.fetch_add(1, std::memory_order_relaxed)) < count) {
                try {
                    (*job)(i);
                } catch (...) {
                    std::lock_guard elk(mu_);
                    if (!error_) error_ = std::current_exception();
                }
            }
            lk.lock();
            if (++finished_workers_ == static_cast<int>(threads_.size())) cv_done_.notify_one();
        }
    }

    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_work_, cv_done_;
    const std::function<void(int)>* job_ = nullptr;
    std::atomic<int> next_job_{0};
    int job_count_ = 0;
    int finished_workers_ = 0;
    std::uint64_t generation_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

}  // namespace

PheromoneStore init_pheromone(std::size_t edge_count, const SolverConfig& config) {
    return PheromoneStore(edge_count, config);
}

std::vector<double> selection_weights(std::span<const CandidateView> candidates,
                                      const PheromoneStore& pheromone,
                                      const SolverConfig& config) {
    std::vector<double> weights(candidates.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        const double tau = pheromone[c.edge_id];
        weights[i] = pw(tau, config.alpha) * pw(c.heuristic, config.beta) *
                     pw(c.dynamic_impact, config.gamma);
        sum += weights[i];
    }
    if (!std::isfinite(sum)) {
        // Overflowed products: redo in log space, shifted by the maximum.
        std::vector<double> logs(candidates.size());
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const auto& c = candidates[i];
            logs[i] = config.alpha * std::log(pheromone[c.edge_id]) +
                      config.beta * std::log(c.heuristic) +
                      config.gamma * std::log(c.dynamic_impact);
            top = std::max(top, logs[i]);
        }
        for (std::size_t i = 0; i < candidates.size(); ++i)
            weights[i] = std::isfinite(logs[i]) ? std::exp(logs[i] - top) : 0.0;
    }
    return weights;
}

std::vector<double> compute_probabilities(std::span<const CandidateView> candidates,
                                          const PheromoneStore& pheromone,
                                          const SolverConfig& config) {
    if (candidates.empty()) throw std::invalid_argument("compute_probabilities: no candidates");
    auto weights = selection_weights(candidates, pheromone, config);
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw degenerate_weights_error("all selection weights are zero or non-finite");
    for (double& w : weights) w /= sum;
    return weights;
}

std::size_t select_candidate(std::span<const CandidateView> candidates,
                             const PheromoneStore& pheromone,
                             const SolverConfig& config, RngStream& rng) {
    if (candidates.empty()) throw std::invalid_argument("select_candidate: no candidates");
    const auto weights = selection_weights(candidates, pheromone, config);
    double sum = 0.0;
    for (double w : weights) sum += w;

    if (!(sum > 0.0) || !std::isfinite(sum)) {
        std::cerr << "aco: degenerate selection weights, picking uniformly\n";
        const double u = rng.next_double();
        auto i = std::min(candidates.size() - 1,
                          static_cast<std::size_t>(u * static_cast<double>(candidates.size())));
        return candidates[i].edge_id;
    }

    if (config.q0 > 0.0 && rng.next_double() < config.q0) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            if (weights[i] > weights[best] ||
                (weights[i] == weights[best] && candidates[i].edge_id < candidates[best].edge_id))
                best = i;
        }
        return candidates[best].edge_id;
    }

    const double u = rng.next_double();
    double cum = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        cum += weights[i] / sum;
        if (u < cum) return candidates[i].edge_id;
    }
    return candidates.back().edge_id;
}

ConstructedSolution construct_solution(ProblemAdapter& adapter,
                                       const PheromoneStore& pheromone,
                                       const SolverConfig& config, RngStream& rng) {
    adapter.reset();
    ConstructedSolution out;
    std::vector<CandidateView> cands;
    while (!adapter.complete()) {
        adapter.candidates(cands);
        if (cands.empty()) break;
        const std::size_t id = select_candidate(cands, pheromone, config, rng);
        adapter.apply(id);
        out.edges.push_back(id);
    }
    adapter.finalize(out.edges);
    out.fitness = adapter.fitness();
    return out;
}

double evaluate_solution(ProblemAdapter& adapter, std::span<const std::size_t> edges) {
    adapter.reset();
    for (std::size_t e : edges) adapter.apply(e);
    std::vector<std::size_t> tail;
    adapter.finalize(tail);
    return adapter.fitness();
}

RunResult run(const AdapterFactory& factory, const SolverConfig& config, int threads) {
    config.validate();
    if (!factory) throw std::invalid_argument("run: null adapter factory");

    const int workers = config.parallel_ants;
    std::vector<std::unique_ptr<ProblemAdapter>> adapters;
    adapters.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        adapters.push_back(factory());
        if (!adapters.back()) throw std::invalid_argument("run: factory returned null adapter");
    }
    const Sense sense = adapters.front()->sense();
    PheromoneStore pheromone(adapters.front()->edge_count(), config);

    struct Submission {
        double fitness = 0.0;
        std::vector<std::size_t> edges;
    };
    std::vector<Submission> submitted(workers);

    int pool_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    pool_threads = std::clamp(pool_threads, 1, workers);
    std::unique_ptr<WorkerPool> pool;
    if (pool_threads > 1) pool = std::make_unique<WorkerPool>(pool_threads);

    RunResult result;
    result.iteration_trace.reserve(config.iterations);

    const auto t0 = std::chrono::steady_clock::now();
    for (int iter = 0; iter < config.iterations; ++iter) {
        auto job = [&](int w) {
            ProblemAdapter& adapter = *adapters[w];
            Submission best;
            for (int s = 0; s < config.sequential_ants; ++s) {
                RngStream rng = RngStream::for_ant(config.seed, static_cast<std::uint64_t>(iter),
                                                   static_cast<std::uint64_t>(w),
                                                   static_cast<std::uint64_t>(s));
                auto sol = construct_solution(adapter, pheromone, config, rng);
                if (s == 0 || better(sol.fitness, best.fitness, sense))
                    best = {sol.fitness, std::move(sol.edges)};
            }
            submitted[w] = std::move(best);
        };
        if (pool)
            pool->run_jobs(workers, job);
        else
            for (int w = 0; w < workers; ++w) job(w);

        int best_w = 0;
        for (int w = 1; w < workers; ++w)
            if (better(submitted[w].fitness, submitted[best_w].fitness, sense)) best_w = w;
        const Submission& iteration_best = submitted[best_w];

        result.iteration_trace.push_back(iteration_best.fitness);
        pheromone.evaporate(config.rho);
        pheromone.deposit(iteration_best.edges, config.rho);

        if (!result.found || better(iteration_best.fitness, result.best_fitness, sense)) {
            result.found = true;
            result.best_fitness = iteration_best.fitness;
            result.best_solution = iteration_best.edges;
        }
        if (config.target_fitness && !result.first_success_iteration &&
            meets_target(iteration_best.fitness, *config.target_fitness, sense))
            result.first_success_iteration = iter;
        if (config.stop_on_target && result.first_success_iteration) break;
    }
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (result.found) {
        auto fresh = factory();
        result.best_fitness = evaluate_solution(*fresh, result.best_solution);
    }
    return result;
}

}  // namespace aco
