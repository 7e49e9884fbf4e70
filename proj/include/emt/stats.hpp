#pragma once

#include <vector>

namespace emt {

struct SampleSummary {
    double mean = 0.0;
    double best = 0.0;   // minimum
    double stddev = 0.0; // sample standard deviation (n-1), 0 for n == 1
    int n = 0;
};

SampleSummary summarize(const std::vector<double>& samples);

struct WilcoxonResult {
    double rank_sum_statistic = 0.0; // midrank sum of sample a
    double z_value = 0.0;            // < 0 when a is stochastically smaller
    double p_two_sided = 1.0;
    bool significant_at_95 = false;  // p < 0.05
    bool exact_path = false;         // true when p came from exact enumeration
};

// Two-sample Wilcoxon rank-sum. Midranks for ties. Exact conditional
// two-sided p (deviation-from-mean counting over all C(n+m, n) rank
// splits) when both samples have at most kWilcoxonExactLimit entries;
// otherwise the normal approximation with tie-corrected variance and a 0.5
// continuity correction. The z value is always the normal-approximation
// one. All pooled values identical yields z = 0, p = 1.
inline constexpr int kWilcoxonExactLimit = 8;

WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b);

// Midranks of the pooled sample in pooled order (a then b); ties share the
// average of the ranks they occupy.
std::vector<double> pooled_midranks(const std::vector<double>& a, const std::vector<double>& b);

} // namespace emt
