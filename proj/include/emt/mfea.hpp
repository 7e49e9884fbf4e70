#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "emt/coeba.hpp" // kUnknownFitness
#include "emt/evaluation.hpp"
#include "emt/permutation.hpp"
#include "emt/rng.hpp"
#include "emt/tsplib.hpp"

namespace emt {

// An individual of the unified population. The genome lives in the unified
// space (dimension D_max); task-k solutions are decoded via project().
struct MfeaIndividual {
    Permutation genome;
    std::vector<long long> factorial_costs;  // kUnknownFitness = not evaluated
    std::vector<int> factorial_ranks;
    double scalar_fitness = 0.0;             // 1 / best rank
    int skill_factor = -1;                   // 0-based task index

    bool evaluated_on(int task) const { return factorial_costs[task] != kUnknownFitness; }
};

struct MfeaConfig {
    int population_size = 200;
    double crossover_prob = 0.9; // assortative-mating gate for unlike skills
    double mutation_prob = 0.1;  // extra per-offspring 2-opt mutation
    std::uint64_t budget = 500000;
    std::uint64_t seed = 1;
    std::uint64_t trace_interval = 5000;

    void validate(int num_tasks) const;
};

// Per task: ascending factorial cost gives ranks 1..#evaluated (cost ties
// keep insertion order); unevaluated costs get the sentinel rank N+1.
// Scalar fitness and skill factor are recomputed from the ranks.
void rank_population(std::vector<MfeaIndividual>& pop, int num_tasks);

// Like-skill parents (or a lucky crossover_prob draw) recombine with order
// crossover and the children imitate a uniformly chosen parent's skill;
// otherwise each parent is copied, mutated with one 2-opt step, and passes
// its skill on. Every child additionally mutates with mutation_prob.
std::pair<MfeaIndividual, MfeaIndividual>
assortative_mating(const MfeaIndividual& a, const MfeaIndividual& b, const MfeaConfig& cfg,
                   Rng& rng);

SolverResult run_mfea(const std::vector<const TspInstance*>& tasks, const MfeaConfig& cfg);

} // namespace emt
