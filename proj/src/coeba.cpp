#include "emt/coeba.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace emt {

std::vector<int> Deme::ranked_indices() const {
    std::vector<int> idx(bats.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return bats[a].last_fitness < bats[b].last_fitness;
    });
    return idx;
}

const Bat& Deme::leader() const {
    int best = 0;
    for (int i = 1; i < (int)bats.size(); ++i)
        if (bats[i].last_fitness < bats[best].last_fitness) best = i;
    return bats[best];
}

void CoebaConfig::validate(int num_tasks) const {
    if (num_tasks < 2) throw std::invalid_argument("coeba: need K >= 2 tasks");
    if (population_size < 2 * num_tasks)
        throw std::invalid_argument("coeba: population_size must be >= 2K");
    if (migration_period < 1) throw std::invalid_argument("coeba: migration_period must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("coeba: alpha must be in (0,1)");
    if (!(gamma > 0.0)) throw std::invalid_argument("coeba: gamma must be > 0");
    if (neighbor_samples < 1) throw std::invalid_argument("coeba: neighbor_samples must be >= 1");
    if (elite_pool_size < 1) throw std::invalid_argument("coeba: elite_pool_size must be >= 1");
    if (budget < (std::uint64_t)population_size * num_tasks)
        throw std::invalid_argument("coeba: budget too small for the X*K initial evaluations");
}

CoebaEngine::CoebaEngine(std::vector<const TspInstance*> tasks, CoebaConfig cfg)
    : tasks_(std::move(tasks)), cfg_(cfg), ledger_(cfg.budget), recorder_(cfg.trace_interval) {
    cfg_.validate((int)tasks_.size());
    evaluators_.reserve(tasks_.size());
    for (const TspInstance* t : tasks_) evaluators_.emplace_back(*t, ledger_);
    for (std::size_t k = 0; k < tasks_.size(); ++k)
        deme_streams_.push_back(Rng::derive(cfg_.seed, {kStreamDeme, (std::uint64_t)k}));
}

void CoebaEngine::reset_bat_state(Bat& bat, Rng& rng) const {
    bat.initial_pulse_rate = rng.uniform_real(cfg_.pulse_init_min, cfg_.pulse_init_max);
    bat.initial_loudness = rng.uniform_real(cfg_.loudness_init_min, cfg_.loudness_init_max);
    bat.pulse_rate = bat.initial_pulse_rate;
    bat.loudness = bat.initial_loudness;
    bat.age = 0;
    bat.scan_cached = false;
}

void CoebaEngine::initialize() {
    const int num_tasks = (int)tasks_.size();
    const int pop = cfg_.population_size;
    int d_max = 0;
    for (const TspInstance* t : tasks_) d_max = std::max(d_max, t->dimension());

    Rng init_rng = Rng::derive(cfg_.seed, {kStreamInit});
    std::vector<Permutation> unified;
    unified.reserve(pop);
    for (int i = 0; i < pop; ++i) unified.push_back(Permutation::random(d_max, init_rng));

    // every individual costed on every task
    std::vector<std::vector<long long>> cost(pop, std::vector<long long>(num_tasks));
    for (int i = 0; i < pop; ++i) {
        for (int k = 0; k < num_tasks; ++k) {
            auto f = evaluators_[k].evaluate(project(unified[i], tasks_[k]->dimension()));
            if (!f) throw std::logic_error("coeba: budget exhausted during initialization");
            cost[i][k] = *f;
        }
    }

    // deme k: top X/K by task-k fitness; remainder goes to the lowest demes
    demes_.clear();
    demes_.resize(num_tasks);
    for (int k = 0; k < num_tasks; ++k) {
        Deme& deme = demes_[k];
        deme.task_index = k;
        deme.evaluator = &evaluators_[k];
        int size = pop / num_tasks + (k < pop % num_tasks ? 1 : 0);

        std::vector<int> idx(pop);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return cost[a][k] < cost[b][k]; });
        deme.bats.reserve(size);
        for (int r = 0; r < size; ++r) {
            Bat bat;
            bat.position = project(unified[idx[r]], tasks_[k]->dimension());
            bat.last_fitness = cost[idx[r]][k];
            reset_bat_state(bat, deme_streams_[k]);
            deme.bats.push_back(std::move(bat));
        }
    }

    recorder_.record(ledger_.used(), evaluators_, trace_);
    initialized_ = true;
}

bool CoebaEngine::bat_iteration(Deme& deme, Rng& rng) {
    const int dim = deme.dimension();
    for (Bat& bat : deme.bats) {
        if (ledger_.exhausted()) return false;
        bat.age += 1;

        // velocity: distance to the swarm leader scales the step count
        const Permutation leader_tour = deme.leader().position;
        const int h = hamming(bat.position, leader_tour);
        const int v = rng.uniform_int(1, std::max(1, h));

        // inclination: short moves below half the problem size
        const MoveKind kind = 2 * v < dim ? MoveKind::TwoOpt : MoveKind::Insertion;
        Permutation candidate = apply_move(bat.position, kind, v, rng);

        if (rng.uniform01() > bat.pulse_rate) {
            // best move (2-opt or insertion) around one of the deme's
            // elites, screened by edge-exchange deltas; the chosen
            // candidate is evaluated below
            const std::vector<int> ranked = deme.ranked_indices();
            const int pool = std::min<int>(cfg_.elite_pool_size, (int)ranked.size());
            Bat& elite = deme.bats[ranked[(int)rng.bounded((std::uint64_t)pool)]];
            if (!elite.scan_cached) {
                const TspInstance& inst = deme.evaluator->instance();
                NeighborMove move = best_two_opt_neighbor(elite.position, inst);
                if (move.delta >= 0) move = best_insertion_neighbor(elite.position, inst);
                elite.cached_scan = std::move(move);
                elite.scan_cached = true;
            }
            candidate = elite.cached_scan.tour;
        }

        auto fitness = deme.evaluator->evaluate(candidate);
        if (!fitness) return false;

        // loudness-gated acceptance on improvement over the bat's own
        // position (a fresh migrant, fitness still unknown, always adopts)
        if (rng.uniform01() < bat.loudness && *fitness < bat.last_fitness) {
            bat.position = std::move(candidate);
            bat.last_fitness = *fitness;
            bat.scan_cached = false;
            bat.pulse_rate = bat.initial_pulse_rate * (1.0 - std::exp(-cfg_.gamma * bat.age));
            bat.loudness = cfg_.alpha * bat.loudness;
        }
    }
    return true;
}

void CoebaEngine::migrate(Rng& rng) {
    const int num_demes = (int)demes_.size();
    for (const Deme& deme : demes_)
        if ((int)deme.bats.size() < cfg_.elite_pool_size + 2)
            throw std::runtime_error("coeba: deme " + std::to_string(deme.task_index) +
                                     " too small to protect a top-" +
                                     std::to_string(cfg_.elite_pool_size) + " during migration");

    for (int s = 0; s < num_demes; ++s) {
        Deme& source = demes_[s];
        int target_index = (int)rng.bounded((std::uint64_t)(num_demes - 1));
        if (target_index >= s) ++target_index;
        Deme& target = demes_[target_index];

        const std::vector<int> src_ranked = source.ranked_indices();
        const int src_pool = std::min<int>(cfg_.elite_pool_size, (int)src_ranked.size());
        // first migrant from the source elite, second from the whole deme
        const int m1 = src_ranked[(int)rng.bounded((std::uint64_t)src_pool)];
        const int m2 = (int)rng.bounded((std::uint64_t)source.bats.size());
        const Permutation migrant_positions[2] = {source.bats[m1].position,
                                                  source.bats[m2].position};

        // two distinct victims outside the target's elite
        const std::vector<int> tgt_ranked = target.ranked_indices();
        std::vector<int> replaceable(tgt_ranked.begin() + cfg_.elite_pool_size, tgt_ranked.end());
        const int v1_at = (int)rng.bounded((std::uint64_t)replaceable.size());
        const int v1 = replaceable[v1_at];
        replaceable.erase(replaceable.begin() + v1_at);
        const int v2 = replaceable[(int)rng.bounded((std::uint64_t)replaceable.size())];

        const int victims[2] = {v1, v2};
        for (int m = 0; m < 2; ++m) {
            Bat& victim = target.bats[victims[m]];
            const Permutation& incoming = migrant_positions[m];
            if (incoming.dimension() > target.dimension())
                victim.position = project(incoming, target.dimension());
            else if (incoming.dimension() < target.dimension())
                victim.position = inflate(incoming, victim.position);
            else
                victim.position = incoming;
            reset_bat_state(victim, rng);
            victim.last_fitness = kUnknownFitness; // not evaluated on arrival
        }
    }
}

void CoebaEngine::leader_sweep(Rng& rng) {
    // rebuild_demes variant: each deme's best bat is sent to every other
    // deme, replacing a random non-elite bat there
    const int num_demes = (int)demes_.size();
    for (const Deme& deme : demes_)
        if ((int)deme.bats.size() < cfg_.elite_pool_size + 2)
            throw std::runtime_error("coeba: deme too small for leader sweep");
    for (int s = 0; s < num_demes; ++s) {
        const Deme& source = demes_[s];
        const Permutation leader = source.bats[source.ranked_indices()[0]].position;
        for (int t = 0; t < num_demes; ++t) {
            if (t == s) continue;
            Deme& target = demes_[t];
            const std::vector<int> tgt_ranked = target.ranked_indices();
            const int pick =
                (int)rng.bounded((std::uint64_t)(tgt_ranked.size() - cfg_.elite_pool_size));
            Bat& victim = target.bats[tgt_ranked[cfg_.elite_pool_size + pick]];
            if (leader.dimension() > target.dimension())
                victim.position = project(leader, target.dimension());
            else if (leader.dimension() < target.dimension())
                victim.position = inflate(leader, victim.position);
            else
                victim.position = leader;
            reset_bat_state(victim, rng);
            victim.last_fitness = kUnknownFitness;
        }
    }
}

bool CoebaEngine::iterate() {
    if (!initialized_) throw std::logic_error("coeba: iterate() before initialize()");
    if (ledger_.exhausted()) return false;
    ++tick_;
    for (std::size_t k = 0; k < demes_.size(); ++k) {
        if (!bat_iteration(demes_[k], deme_streams_[k])) return false;
    }
    if (tick_ % cfg_.migration_period == 0) {
        Rng mig = Rng::derive(cfg_.seed, {kStreamMigration, (std::uint64_t)tick_});
        if (cfg_.rebuild_demes)
            leader_sweep(mig);
        else
            migrate(mig);
    }
    recorder_.record(ledger_.used(), evaluators_, trace_);
    return true;
}

SolverResult CoebaEngine::result() const {
    SolverResult res;
    for (const TaskEvaluator& ev : evaluators_) res.per_task.push_back({ev.best_fitness(), ev.best_tour()});
    res.trace = trace_;
    res.evaluations_used = ledger_.used();
    return res;
}

SolverResult CoebaEngine::run() {
    initialize();
    while (iterate()) {
    }
    recorder_.record(ledger_.used(), evaluators_, trace_, /*force=*/true);
    return result();
}

SolverResult run_coeba(const std::vector<const TspInstance*>& tasks, const CoebaConfig& cfg) {
    CoebaEngine engine(tasks, cfg);
    return engine.run();
}

} // namespace emt
