#include "emt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace emt {

SampleSummary summarize(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("summarize: empty sample");
    SampleSummary s;
    s.n = (int)samples.size();
    s.best = *std::min_element(samples.begin(), samples.end());
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / s.n;
    if (s.n > 1) {
        double acc = 0.0;
        for (double x : samples) acc += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(acc / (s.n - 1));
    }
    return s;
}

std::vector<double> pooled_midranks(const std::vector<double>& a, const std::vector<double>& b) {
    const int m = (int)(a.size() + b.size());
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    auto value = [&](int i) { return i < (int)a.size() ? a[i] : b[i - a.size()]; };
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return value(x) < value(y); });

    std::vector<double> ranks(m);
    int i = 0;
    while (i < m) {
        int j = i;
        while (j < m && value(idx[j]) == value(idx[i])) ++j;
        const double mid = (i + 1 + j) / 2.0; // average of ranks i+1..j
        for (int k = i; k < j; ++k) ranks[idx[k]] = mid;
        i = j;
    }
    return ranks;
}

namespace {

// Exact two-sided p: over all C(M, n) assignments of the pooled midranks
// to sample a, the probability that |sum - n(M+1)/2| is at least the
// observed deviation. Doubled midranks keep everything in integers.
double exact_two_sided_p(const std::vector<long long>& doubled_ranks, int n,
                         long long doubled_sum_a) {
    const int m = (int)doubled_ranks.size();
    const long long doubled_mean = (long long)n * (m + 1); // 2 * n(M+1)/2
    const long long dev = std::llabs(doubled_sum_a - doubled_mean);

    const long long total_sum = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0LL);
    // ways[c][s]: subsets of size c with doubled-rank sum s
    std::vector<std::vector<unsigned long long>> ways(
        n + 1, std::vector<unsigned long long>(total_sum + 1, 0));
    ways[0][0] = 1;
    for (long long r : doubled_ranks) {
        for (int c = std::min(n, m) - 1; c >= 0; --c) {
            const int cc = c;
            for (long long s = total_sum - r; s >= 0; --s) {
                if (ways[cc][s]) ways[cc + 1][s + r] += ways[cc][s];
            }
        }
    }
    unsigned long long hits = 0, total = 0;
    for (long long s = 0; s <= total_sum; ++s) {
        const unsigned long long w = ways[n][s];
        if (!w) continue;
        total += w;
        if (std::llabs(s - doubled_mean) >= dev) hits += w;
    }
    return (double)hits / (double)total;
}

} // namespace

WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("wilcoxon_rank_sum: samples must be non-empty");
    const int n = (int)a.size();
    const int nb = (int)b.size();
    const int m = n + nb;

    const std::vector<double> ranks = pooled_midranks(a, b);
    double w = 0.0;
    for (int i = 0; i < n; ++i) w += ranks[i];

    // tie groups for the variance correction
    std::vector<double> sorted(ranks);
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (int i = 0; i < m;) {
        int j = i;
        while (j < m && sorted[j] == sorted[i]) ++j;
        const double t = j - i;
        tie_term += t * t * t - t;
        i = j;
    }

    const double mean = n * (m + 1) / 2.0;
    const double variance =
        (double)n * nb / 12.0 * ((m + 1) - tie_term / ((double)m * (m - 1)));

    WilcoxonResult res;
    res.rank_sum_statistic = w;
    const double diff = w - mean;
    if (variance > 0.0 && std::abs(diff) > 0.5) {
        const double corrected = diff > 0 ? diff - 0.5 : diff + 0.5;
        res.z_value = corrected / std::sqrt(variance);
    } else {
        res.z_value = 0.0;
    }

    if (n <= kWilcoxonExactLimit && nb <= kWilcoxonExactLimit) {
        std::vector<long long> doubled(m);
        for (int i = 0; i < m; ++i) doubled[i] = std::llround(2.0 * ranks[i]);
        long long doubled_w = 0;
        for (int i = 0; i < n; ++i) doubled_w += doubled[i];
        res.p_two_sided = exact_two_sided_p(doubled, n, doubled_w);
        res.exact_path = true;
    } else if (variance > 0.0) {
        res.p_two_sided = std::erfc(std::abs(res.z_value) / std::sqrt(2.0));
    } else {
        res.p_two_sided = 1.0; // all pooled values identical
    }
    res.significant_at_95 = res.p_two_sided < 0.05;
    return res;
}

} // namespace emt
