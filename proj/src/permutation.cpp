#include "emt/permutation.hpp"

#include <numeric>
#include <stdexcept>

namespace emt {

bool is_permutation_of_1_to_n(const std::vector<int>& order) {
    const int n = (int)order.size();
    std::vector<char> seen(n + 1, 0);
    for (int v : order) {
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
    if (!is_permutation_of_1_to_n(order_))
        throw std::invalid_argument("Permutation: order is not a bijection on {1..n}");
}

Permutation Permutation::identity(int dim) {
    std::vector<int> v(dim);
    std::iota(v.begin(), v.end(), 1);
    return unchecked(std::move(v));
}

Permutation Permutation::random(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("Permutation::random: dim must be >= 1");
    std::vector<int> v(dim);
    std::iota(v.begin(), v.end(), 1);
    rng.shuffle(v);
    return unchecked(std::move(v));
}

Permutation Permutation::unchecked(std::vector<int> order) {
    Permutation p;
    p.order_ = std::move(order);
    return p;
}

bool Permutation::valid() const { return is_permutation_of_1_to_n(order_); }

std::string Permutation::to_string() const {
    std::string s;
    s.reserve(order_.size() * 4);
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(order_[i]);
    }
    return s;
}

Permutation project(const Permutation& p, int target_dim) {
    if (target_dim < 1 || target_dim > p.dimension())
        throw std::invalid_argument("project: target_dim out of range");
    std::vector<int> out;
    out.reserve(target_dim);
    for (int v : p.order())
        if (v <= target_dim) out.push_back(v);
    return Permutation::unchecked(std::move(out));
}

Permutation inflate(const Permutation& p, const Permutation& replaced) {
    const int small = p.dimension();
    const int big = replaced.dimension();
    if (small > big)
        throw std::invalid_argument("inflate: p.dimension() must be <= replaced.dimension()");
    std::vector<int> out(big, 0);
    for (int i = 0; i < big; ++i)
        if (replaced[i] > small) out[i] = replaced[i];
    int src = 0;
    for (int i = 0; i < big; ++i)
        if (out[i] == 0) out[i] = p[src++];
    return Permutation::unchecked(std::move(out));
}

} // namespace emt
