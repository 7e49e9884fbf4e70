#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "emt/evaluation.hpp"
#include "emt/operators.hpp"
#include "emt/permutation.hpp"
#include "emt/rng.hpp"
#include "emt/tsplib.hpp"

namespace emt {

inline constexpr long long kUnknownFitness = std::numeric_limits<long long>::max();

// One individual of the swarm. Loudness gates acceptance and only decays;
// the pulse rate gates the elite local search and rises back toward its
// initial value with the bat's age.
struct Bat {
    Permutation position;
    double pulse_rate = 0.0;         // r_i
    double loudness = 1.0;           // A_i
    double initial_pulse_rate = 0.0; // r_i0, drawn from [0.0, 0.4]
    double initial_loudness = 1.0;   // A_i0, drawn from [0.8, 1.0]
    int age = 0;                     // iterations since creation
    // Fitness of `position` when it was last evaluated. Unknown for bats
    // freshly placed by migration (their adapted position is not evaluated
    // on arrival); unknown ranks last in every fitness ordering.
    long long last_fitness = kUnknownFitness;
    // Memoized neighborhood scan of `position` (the scan is a deterministic
    // function of it); dropped whenever the position changes.
    bool scan_cached = false;
    NeighborMove cached_scan;
};

// Subpopulation bound to one task. Bats here are only ever evaluated on
// that task; the task evaluator also tracks the deme best (minimum over
// every evaluation performed for the task).
struct Deme {
    int task_index = 0;
    std::vector<Bat> bats;
    TaskEvaluator* evaluator = nullptr;

    int dimension() const { return evaluator->instance().dimension(); }

    // Best over everything ever evaluated for the task (reported result).
    long long best_fitness() const { return evaluator->best_fitness(); }
    const Permutation& best_tour() const { return evaluator->best_tour(); }

    // Bat indices ordered by (last known fitness, index). Unknown last.
    std::vector<int> ranked_indices() const;

    // The swarm leader: the fittest position currently held by a bat. This
    // is the reference the movement and acceptance rules use; comparing
    // against the evaluated-ever minimum instead would strand the
    // acceptance bar on discarded candidates and freeze the population.
    const Bat& leader() const;
};

struct CoebaConfig {
    int population_size = 200; // X
    int migration_period = 100; // migr, in outer-loop iterations
    double alpha = 0.98;
    double gamma = 0.98;
    double loudness_init_min = 0.8, loudness_init_max = 1.0;
    double pulse_init_min = 0.0, pulse_init_max = 0.4;
    int neighbor_samples = 10;
    int elite_pool_size = 10;
    std::uint64_t budget = 500000; // objective-evaluation budget I
    std::uint64_t seed = 1;
    std::uint64_t trace_interval = 5000;
    // Experimentation flag: every migration tick, replace the pairwise
    // exchange with a sweep that sends each deme's best bat to every other
    // deme. Off by default.
    bool rebuild_demes = false;

    void validate(int num_tasks) const; // throws std::invalid_argument
};

// The coevolutionary engine: one deme per task, independent per-deme random
// streams derived from (seed, deme index), migration streams derived from
// (seed, migration, tick). Fully deterministic for a fixed seed.
class CoebaEngine {
  public:
    CoebaEngine(std::vector<const TspInstance*> tasks, CoebaConfig cfg);

    // X random permutations of D_max, each evaluated on every task
    // (X*K evaluations); deme k keeps the top X/K by task-k fitness,
    // stored projected to D_k. The same individual may seed several demes.
    void initialize();

    // One pass over one deme (the inner loop of the algorithm). Returns
    // false when the evaluation budget ran out mid-deme.
    bool bat_iteration(Deme& deme, Rng& rng);

    // Every deme sends two bats (one from its top elite_pool_size, one
    // drawn from the whole deme) to a random other deme, dimension-adapted
    // by project/inflate; they overwrite two random non-elite bats there.
    void migrate(Rng& rng);

    // One outer-loop tick: every deme iterates, then migration if due.
    // Returns false once the budget is exhausted.
    bool iterate();

    SolverResult run(); // initialize + iterate to budget exhaustion

    const std::vector<Deme>& demes() const { return demes_; }
    std::vector<Deme>& demes() { return demes_; }
    BudgetLedger& ledger() { return ledger_; }
    const CoebaConfig& config() const { return cfg_; }
    int iteration() const { return tick_; }
    Rng& deme_stream(int k) { return deme_streams_[k]; }
    SolverResult result() const; // snapshot of per-task bests and trace

  private:
    void reset_bat_state(Bat& bat, Rng& rng) const;
    void leader_sweep(Rng& rng); // rebuild_demes behavior

    std::vector<const TspInstance*> tasks_;
    CoebaConfig cfg_;
    BudgetLedger ledger_;
    std::vector<TaskEvaluator> evaluators_;
    std::vector<Deme> demes_;
    std::vector<Rng> deme_streams_;
    TraceRecorder recorder_;
    std::vector<TraceRow> trace_;
    int tick_ = 0;
    bool initialized_ = false;
};

SolverResult run_coeba(const std::vector<const TspInstance*>& tasks, const CoebaConfig& cfg);

} // namespace emt
