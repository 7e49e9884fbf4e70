#pragma once

#include <string>
#include <vector>

#include "emt/rng.hpp"

namespace emt {

// Tour genotype: a permutation of the 1-based city ids {1..dimension}.
// Individuals of every search space (task spaces and the unified space)
// are plain Permutations; only the dimension differs.
class Permutation {
  public:
    Permutation() = default;

    // Validates that `order` is a bijection on {1..order.size()}.
    explicit Permutation(std::vector<int> order);

    static Permutation identity(int dim);

    // Uniformly random permutation (unbiased Fisher-Yates shuffle).
    static Permutation random(int dim, Rng& rng);

    // For operator internals that construct known-valid orders.
    static Permutation unchecked(std::vector<int> order);

    int dimension() const { return (int)order_.size(); }
    int operator[](int pos) const { return order_[pos]; }
    const std::vector<int>& order() const { return order_; }
    std::vector<int>& mutable_order() { return order_; }

    bool valid() const;

    bool operator==(const Permutation& o) const = default;

    // Comma-separated 1-based ids, the on-disk form used in result files.
    std::string to_string() const;

  private:
    std::vector<int> order_;
};

bool is_permutation_of_1_to_n(const std::vector<int>& order);

// Deflate into a smaller search space: keep exactly the values
// {1..target_dim}, preserving their relative order.
Permutation project(const Permutation& p, int target_dim);

// Inflate into a larger search space. Every value v > p.dimension() is
// pinned at the absolute position it occupies in `replaced` (the individual
// being substituted); the remaining positions take p's values in p's order.
Permutation inflate(const Permutation& p, const Permutation& replaced);

} // namespace emt
