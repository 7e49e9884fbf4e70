#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "emt/permutation.hpp"
#include "emt/rng.hpp"
#include "emt/tsplib.hpp"

namespace emt {

enum class MoveKind { TwoOpt, Insertion };

// Budget-aware objective: returns the tour length, or nullopt once the
// evaluation budget is exhausted.
using Objective = std::function<std::optional<long long>(const Permutation&)>;

// Positions where a and b disagree. Never 1 for permutations.
int hamming(const Permutation& a, const Permutation& b);

// Reverse one uniformly chosen contiguous segment (two distinct cut
// positions, segment length >= 2).
Permutation two_opt_step(const Permutation& p, Rng& rng);

// Remove the value at one uniformly chosen position and reinsert it at a
// different uniformly chosen final position.
Permutation insertion_step(const Permutation& p, Rng& rng);

// Apply the elementary step of `kind` v times in sequence (v >= 1).
Permutation apply_move(const Permutation& p, MoveKind kind, int v, Rng& rng);

// Draw n_samples 2-opt neighbors of p, evaluate each against `objective`,
// return the fittest (ties: first drawn). Evaluations count against the
// budget; if it runs dry mid-sampling the best so far is returned, or
// nullopt when nothing was evaluated. There is no self-inclusion: the
// result may be worse than p.
std::optional<std::pair<Permutation, long long>>
best_sampled_neighbor(const Permutation& p, int n_samples, const Objective& objective, Rng& rng);

// A neighborhood-scan result: the chosen neighbor and its closed-tour
// length change relative to the input (negative = improvement).
struct NeighborMove {
    Permutation tour;
    long long delta = 0;
};

// The best tour in the full 2-opt neighborhood of p, scanned with O(1)
// edge-exchange deltas (distance lookups only, no objective evaluations).
// Ties break toward the first cut pair in (i, j) scan order. delta >= 0
// exactly when p is 2-opt locally optimal.
NeighborMove best_two_opt_neighbor(const Permutation& p, const TspInstance& inst);

// Best single-city relocation (insertion move), same delta-scan approach.
NeighborMove best_insertion_neighbor(const Permutation& p, const TspInstance& inst);

// Davis order crossover. Each child keeps its parent's segment between the
// two cuts and fills the remaining slots left to right with the other
// parent's values in cyclic order starting after the second cut.
std::pair<Permutation, Permutation>
order_crossover(const Permutation& a, const Permutation& b, Rng& rng);

} // namespace emt
