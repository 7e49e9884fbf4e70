#include "emt/operators.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace emt {

int hamming(const Permutation& a, const Permutation& b) {
    if (a.dimension() != b.dimension())
        throw std::invalid_argument("hamming: dimension mismatch");
    int count = 0;
    for (int i = 0; i < a.dimension(); ++i)
        if (a[i] != b[i]) ++count;
    return count;
}

Permutation two_opt_step(const Permutation& p, Rng& rng) {
    const int n = p.dimension();
    if (n < 2) throw std::invalid_argument("two_opt_step: dimension must be >= 2");
    int i = rng.uniform_int(0, n - 1);
    int j = rng.uniform_int(0, n - 2);
    if (j >= i) ++j; // j uniform over positions != i
    if (i > j) std::swap(i, j);
    std::vector<int> order = p.order();
    std::reverse(order.begin() + i, order.begin() + j + 1);
    return Permutation::unchecked(std::move(order));
}

Permutation insertion_step(const Permutation& p, Rng& rng) {
    const int n = p.dimension();
    if (n < 2) throw std::invalid_argument("insertion_step: dimension must be >= 2");
    int from = rng.uniform_int(0, n - 1);
    int to = rng.uniform_int(0, n - 2);
    if (to >= from) ++to; // final position, != from
    std::vector<int> order = p.order();
    int value = order[from];
    order.erase(order.begin() + from);
    order.insert(order.begin() + to, value);
    return Permutation::unchecked(std::move(order));
}

Permutation apply_move(const Permutation& p, MoveKind kind, int v, Rng& rng) {
    if (v < 1) throw std::invalid_argument("apply_move: v must be >= 1");
    Permutation out = p;
    for (int step = 0; step < v; ++step)
        out = kind == MoveKind::TwoOpt ? two_opt_step(out, rng) : insertion_step(out, rng);
    return out;
}

std::optional<std::pair<Permutation, long long>>
best_sampled_neighbor(const Permutation& p, int n_samples, const Objective& objective, Rng& rng) {
    if (n_samples < 1) throw std::invalid_argument("best_sampled_neighbor: n_samples must be >= 1");
    std::optional<std::pair<Permutation, long long>> best;
    for (int s = 0; s < n_samples; ++s) {
        Permutation cand = two_opt_step(p, rng);
        auto fitness = objective(cand);
        if (!fitness) break; // budget exhausted
        if (!best || *fitness < best->second) best = {std::move(cand), *fitness};
    }
    return best;
}

NeighborMove best_two_opt_neighbor(const Permutation& p, const TspInstance& inst) {
    const int n = p.dimension();
    if (n != inst.dimension())
        throw std::invalid_argument("best_two_opt_neighbor: dimension mismatch");
    if (n < 3) throw std::invalid_argument("best_two_opt_neighbor: dimension must be >= 3");

    std::vector<int> edge(n); // edge[k] = d(p[k], p[k+1 mod n])
    for (int k = 0; k < n; ++k) edge[k] = inst.distance_unchecked(p[k], p[(k + 1) % n]);

    // reversing positions [i..j] replaces edges (i-1,i) and (j,j+1); the
    // full-range reversal (i=0, j=n-1) has delta 0 and is skipped
    long long best_delta = std::numeric_limits<long long>::max();
    int best_i = 0, best_j = 1;
    for (int i = 0; i < n - 1; ++i) {
        const int a = p[(i - 1 + n) % n];
        const int b = p[i];
        const long long removed_ab = edge[(i - 1 + n) % n];
        const int j_end = i == 0 ? n - 1 : n;
        for (int j = i + 1; j < j_end; ++j) {
            const int c = p[j];
            const int d = p[(j + 1) % n];
            const long long delta = (long long)inst.distance_unchecked(a, c) +
                                    inst.distance_unchecked(b, d) - removed_ab - edge[j];
            if (delta < best_delta) {
                best_delta = delta;
                best_i = i;
                best_j = j;
            }
        }
    }
    std::vector<int> order = p.order();
    std::reverse(order.begin() + best_i, order.begin() + best_j + 1);
    return {Permutation::unchecked(std::move(order)), best_delta};
}

NeighborMove best_insertion_neighbor(const Permutation& p, const TspInstance& inst) {
    const int n = p.dimension();
    if (n != inst.dimension())
        throw std::invalid_argument("best_insertion_neighbor: dimension mismatch");
    if (n < 3) throw std::invalid_argument("best_insertion_neighbor: dimension must be >= 3");

    long long best_delta = std::numeric_limits<long long>::max();
    int best_from = 0, best_gap = 1;
    for (int i = 0; i < n; ++i) {
        const int prev = p[(i - 1 + n) % n];
        const int b = p[i];
        const int next = p[(i + 1) % n];
        const long long removal = (long long)inst.distance_unchecked(prev, next) -
                                  inst.distance_unchecked(prev, b) -
                                  inst.distance_unchecked(b, next);
        // gaps are the remaining tour edges (u, w); skipping the two edges
        // incident to b also skips the null reinsertion at the bridge
        for (int k = 0; k < n; ++k) {
            if (k == i || (k + 1) % n == i) continue;
            const int u = p[k];
            const int w = p[(k + 1) % n];
            const long long delta = removal + inst.distance_unchecked(u, b) +
                                    inst.distance_unchecked(b, w) -
                                    inst.distance_unchecked(u, w);
            if (delta < best_delta) {
                best_delta = delta;
                best_from = i;
                best_gap = k;
            }
        }
    }
    // rebuild: remove b, then insert after u (gap edge start)
    std::vector<int> order;
    order.reserve(n);
    const int b = p[best_from];
    for (int k = 0; k < n; ++k) {
        if (k == best_from) continue;
        order.push_back(p[k]);
        if (k == best_gap) order.push_back(b);
    }
    return {Permutation::unchecked(std::move(order)), best_delta};
}

std::pair<Permutation, Permutation>
order_crossover(const Permutation& a, const Permutation& b, Rng& rng) {
    const int n = a.dimension();
    if (n != b.dimension()) throw std::invalid_argument("order_crossover: dimension mismatch");
    if (n < 2) throw std::invalid_argument("order_crossover: dimension must be >= 2");
    // cuts are boundaries in 0..n; segment spans positions [c1, c2)
    int c1 = rng.uniform_int(0, n);
    int c2 = rng.uniform_int(0, n - 1);
    if (c2 >= c1) ++c2;
    if (c1 > c2) std::swap(c1, c2);

    auto make_child = [&](const Permutation& seg_parent, const Permutation& fill_parent) {
        std::vector<int> child(n, 0);
        std::vector<char> in_segment(n + 1, 0);
        for (int i = c1; i < c2; ++i) {
            child[i] = seg_parent[i];
            in_segment[seg_parent[i]] = 1;
        }
        // fill remaining slots left to right, taking the other parent's
        // values in cyclic order starting after the second cut
        int slot = 0;
        for (int k = 0; k < n; ++k) {
            int value = fill_parent[(c2 + k) % n];
            if (in_segment[value]) continue;
            while (slot >= c1 && slot < c2) ++slot;
            child[slot++] = value;
        }
        return Permutation::unchecked(std::move(child));
    };

    return {make_child(a, b), make_child(b, a)};
}

} // namespace emt
