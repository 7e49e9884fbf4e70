#include "emt/mfea.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace emt {

void MfeaConfig::validate(int num_tasks) const {
    if (num_tasks < 1) throw std::invalid_argument("mfea: need at least one task");
    if (population_size < 2 || population_size % 2 != 0)
        throw std::invalid_argument("mfea: population_size must be even and >= 2");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("mfea: crossover_prob must be in [0,1]");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw std::invalid_argument("mfea: mutation_prob must be in [0,1]");
    if (budget < (std::uint64_t)population_size * num_tasks)
        throw std::invalid_argument("mfea: budget too small for the initial N*K evaluations");
}

void rank_population(std::vector<MfeaIndividual>& pop, int num_tasks) {
    if (pop.empty()) throw std::invalid_argument("rank_population: empty population");
    const int n = (int)pop.size();
    const int sentinel = n + 1;

    for (auto& ind : pop) {
        ind.factorial_ranks.assign(num_tasks, sentinel);
    }
    std::vector<int> idx;
    for (int k = 0; k < num_tasks; ++k) {
        idx.clear();
        for (int i = 0; i < n; ++i)
            if (pop[i].evaluated_on(k)) idx.push_back(i);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return pop[a].factorial_costs[k] < pop[b].factorial_costs[k];
        });
        for (int r = 0; r < (int)idx.size(); ++r) pop[idx[r]].factorial_ranks[k] = r + 1;
    }
    for (auto& ind : pop) {
        int best_rank = sentinel;
        int best_task = 0;
        for (int k = 0; k < num_tasks; ++k) {
            if (ind.factorial_ranks[k] < best_rank) {
                best_rank = ind.factorial_ranks[k];
                best_task = k;
            }
        }
        ind.scalar_fitness = 1.0 / best_rank;
        ind.skill_factor = best_task;
    }
}

std::pair<MfeaIndividual, MfeaIndividual>
assortative_mating(const MfeaIndividual& a, const MfeaIndividual& b, const MfeaConfig& cfg,
                   Rng& rng) {
    const int num_tasks = (int)a.factorial_costs.size();
    MfeaIndividual c1, c2;
    c1.factorial_costs.assign(num_tasks, kUnknownFitness);
    c2.factorial_costs.assign(num_tasks, kUnknownFitness);

    if (a.skill_factor == b.skill_factor || rng.uniform01() < cfg.crossover_prob) {
        auto [g1, g2] = order_crossover(a.genome, b.genome, rng);
        c1.genome = std::move(g1);
        c2.genome = std::move(g2);
        // vertical cultural transmission
        c1.skill_factor = rng.uniform01() < 0.5 ? a.skill_factor : b.skill_factor;
        c2.skill_factor = rng.uniform01() < 0.5 ? a.skill_factor : b.skill_factor;
    } else {
        c1.genome = two_opt_step(a.genome, rng);
        c1.skill_factor = a.skill_factor;
        c2.genome = two_opt_step(b.genome, rng);
        c2.skill_factor = b.skill_factor;
    }
    if (rng.uniform01() < cfg.mutation_prob) c1.genome = two_opt_step(c1.genome, rng);
    if (rng.uniform01() < cfg.mutation_prob) c2.genome = two_opt_step(c2.genome, rng);
    return {std::move(c1), std::move(c2)};
}

SolverResult run_mfea(const std::vector<const TspInstance*>& tasks, const MfeaConfig& cfg) {
    const int num_tasks = (int)tasks.size();
    cfg.validate(num_tasks);
    const int n = cfg.population_size;
    int d_max = 0;
    for (const TspInstance* t : tasks) d_max = std::max(d_max, t->dimension());

    BudgetLedger ledger(cfg.budget);
    std::vector<TaskEvaluator> evaluators;
    evaluators.reserve(num_tasks);
    for (const TspInstance* t : tasks) evaluators.emplace_back(*t, ledger);
    TraceRecorder recorder(cfg.trace_interval);
    std::vector<TraceRow> trace;

    Rng rng = Rng::derive(cfg.seed, {kStreamMfea});

    // fully evaluated initial generation
    std::vector<MfeaIndividual> pop(n);
    for (auto& ind : pop) {
        ind.genome = Permutation::random(d_max, rng);
        ind.factorial_costs.assign(num_tasks, kUnknownFitness);
        for (int k = 0; k < num_tasks; ++k) {
            auto f = evaluators[k].evaluate(project(ind.genome, tasks[k]->dimension()));
            if (!f) throw std::logic_error("mfea: budget exhausted during initialization");
            ind.factorial_costs[k] = *f;
        }
    }
    rank_population(pop, num_tasks);
    recorder.record(ledger.used(), evaluators, trace);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    while (!ledger.exhausted()) {
        // random pairing
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);

        std::vector<MfeaIndividual> offspring;
        offspring.reserve(n);
        bool out_of_budget = false;
        for (int p = 0; p + 1 < n && !out_of_budget; p += 2) {
            auto [c1, c2] = assortative_mating(pop[order[p]], pop[order[p + 1]], cfg, rng);
            for (MfeaIndividual* child : {&c1, &c2}) {
                // selective evaluation: skill-factor task only
                const int k = child->skill_factor;
                auto f = evaluators[k].evaluate(project(child->genome, tasks[k]->dimension()));
                if (!f) {
                    out_of_budget = true;
                    break;
                }
                child->factorial_costs[k] = *f;
            }
            if (out_of_budget) break;
            offspring.push_back(std::move(c1));
            offspring.push_back(std::move(c2));
        }
        if (out_of_budget) break; // partial generation is abandoned

        // elitist mu+lambda survivor selection by scalar fitness
        std::vector<MfeaIndividual> merged;
        merged.reserve(pop.size() + offspring.size());
        for (auto& ind : pop) merged.push_back(std::move(ind));
        for (auto& ind : offspring) merged.push_back(std::move(ind));
        rank_population(merged, num_tasks);

        std::vector<int> idx(merged.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return merged[a].scalar_fitness > merged[b].scalar_fitness;
        });
        std::vector<MfeaIndividual> next;
        next.reserve(n);
        for (int i = 0; i < n; ++i) next.push_back(std::move(merged[idx[i]]));
        pop = std::move(next);
        rank_population(pop, num_tasks);

        recorder.record(ledger.used(), evaluators, trace);
    }

    recorder.record(ledger.used(), evaluators, trace, /*force=*/true);
    SolverResult res;
    for (const TaskEvaluator& ev : evaluators) res.per_task.push_back({ev.best_fitness(), ev.best_tour()});
    res.trace = std::move(trace);
    res.evaluations_used = ledger.used();
    return res;
}

} // namespace emt
