#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "emt/permutation.hpp"
#include "emt/tsplib.hpp"

namespace emt {

// Per-run evaluation budget. Every objective evaluation anywhere in a run
// (initialization, movement candidates, neighbor sampling, offspring
// evaluation) charges exactly one unit; a charge is refused once the limit
// is reached, so the consumed total never exceeds the limit.
class BudgetLedger {
  public:
    explicit BudgetLedger(std::uint64_t limit) : limit_(limit) {}

    bool try_charge() {
        std::uint64_t cur = used_.load(std::memory_order_relaxed);
        while (cur < limit_) {
            if (used_.compare_exchange_weak(cur, cur + 1, std::memory_order_relaxed)) return true;
        }
        return false;
    }

    bool exhausted() const { return used_.load(std::memory_order_relaxed) >= limit_; }
    std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    std::uint64_t limit() const { return limit_; }

  private:
    std::atomic<std::uint64_t> used_{0};
    std::uint64_t limit_;
};

// Budget-charging objective for one task. Folds every evaluated tour into
// the best-seen record, so the reported best is the minimum over all
// evaluations performed for the task.
class TaskEvaluator {
  public:
    TaskEvaluator(const TspInstance& inst, BudgetLedger& ledger)
        : inst_(&inst), ledger_(&ledger) {}

    std::optional<long long> evaluate(const Permutation& tour) {
        if (!ledger_->try_charge()) return std::nullopt;
        long long fitness = tour_length(*inst_, tour);
        if (fitness < best_fitness_) {
            best_fitness_ = fitness;
            best_tour_ = tour;
        }
        return fitness;
    }

    const TspInstance& instance() const { return *inst_; }
    BudgetLedger& ledger() const { return *ledger_; }
    bool has_best() const { return best_fitness_ != std::numeric_limits<long long>::max(); }
    long long best_fitness() const { return best_fitness_; }
    const Permutation& best_tour() const { return best_tour_; }

  private:
    const TspInstance* inst_;
    BudgetLedger* ledger_;
    long long best_fitness_ = std::numeric_limits<long long>::max();
    Permutation best_tour_;
};

struct TraceRow {
    std::uint64_t evaluations;
    int task;            // 0-based task index within the scenario
    long long best_fitness;
};

struct TaskBest {
    long long fitness;
    Permutation tour;
};

// What a solver run produces: the best evaluated solution per task, the
// checkpoint trace, and the exact number of evaluations consumed.
struct SolverResult {
    std::vector<TaskBest> per_task;
    std::vector<TraceRow> trace;
    std::uint64_t evaluations_used = 0;
};

// Emits one trace row per task whenever `used` crosses the next checkpoint.
class TraceRecorder {
  public:
    explicit TraceRecorder(std::uint64_t interval) : interval_(interval ? interval : 1) {}

    void record(std::uint64_t used, const std::vector<TaskEvaluator>& tasks,
                std::vector<TraceRow>& out, bool force = false) {
        if (used == last_) return;
        if (!force && used < next_) return;
        for (std::size_t k = 0; k < tasks.size(); ++k)
            out.push_back({used, (int)k, tasks[k].best_fitness()});
        while (next_ <= used) next_ += interval_;
        last_ = used;
    }

  private:
    std::uint64_t interval_;
    std::uint64_t next_ = 0;
    std::uint64_t last_ = std::numeric_limits<std::uint64_t>::max();
};

} // namespace emt
