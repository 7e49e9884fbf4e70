#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emt/config_file.hpp"
#include "emt/evaluation.hpp"
#include "emt/scenario.hpp"
#include "emt/stats.hpp"

namespace emt {

struct RunTaskResult {
    std::string instance;
    int dimension = 0;
    long long best_fitness = 0;
    std::string best_tour; // comma-separated 1-based ids
};

// One (scenario, solver, seed) execution. Everything except
// wall_clock_seconds is deterministic per (solver, scenario, seed, config).
struct RunRecord {
    std::string scenario;
    std::string solver; // "coeba" | "mfea"
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint64_t evaluations_used = 0;
    double wall_clock_seconds = 0.0;
    std::vector<RunTaskResult> tasks;
    std::vector<TraceRow> trace;
    ConfigMap config; // effective solver configuration
};

// Seed lists come as "1..20", "1-20" or "3,7,11".
std::vector<std::uint64_t> parse_seeds(const std::string& text);

RunRecord run_single(const InstanceStore& store, const Scenario& scenario,
                     const std::string& solver, std::uint64_t seed,
                     std::optional<std::uint64_t> budget_override, const ConfigMap& overrides);

// Runs all seeds (optionally on `jobs` worker threads; records still come
// back in seed order). When out_dir is non-empty each run is persisted as
// one JSON document plus an appended row in results.csv.
std::vector<RunRecord> run_experiment(const InstanceStore& store, const Scenario& scenario,
                                      const std::string& solver,
                                      const std::vector<std::uint64_t>& seeds,
                                      std::optional<std::uint64_t> budget_override,
                                      const ConfigMap& overrides, const std::string& out_dir,
                                      int jobs = 1);

std::string run_record_filename(const RunRecord& record);
std::string serialize_run_record(const RunRecord& record); // stable field order
RunRecord parse_run_record(const std::string& json_text);
void write_run_record(const RunRecord& record, const std::string& path);
RunRecord read_run_record(const std::string& path);

// results.csv: one row per run, list fields joined with ';'.
extern const char* kResultsCsvHeader;
std::string run_record_csv_row(const RunRecord& record);
void append_results_csv(const std::vector<RunRecord>& records, const std::string& csv_path);

std::vector<RunRecord> load_records(const std::string& dir, const std::string& scenario,
                                    const std::string& solver);
std::vector<std::string> scenarios_present(const std::string& dir);

struct InstanceComparison {
    std::string instance;
    int dimension = 0;
    std::optional<long long> optimum;
    SampleSummary coeba;
    SampleSummary mfea;
    std::string verdict; // "WIN" (coeba mean lower), "LOSS", "TIE"
    WilcoxonResult wilcoxon; // sample a = coeba, so z < 0 favors coeba
    std::optional<double> coeba_gap_percent; // (mean - optimum) / optimum * 100
};

struct ComparisonReport {
    std::string scenario;
    int coeba_runs = 0;
    int mfea_runs = 0;
    std::vector<InstanceComparison> instances;
    std::vector<std::string> verdicts; // one token per instance, scenario order
};

ComparisonReport compare(const std::vector<RunRecord>& coeba_records,
                         const std::vector<RunRecord>& mfea_records, const InstanceStore& store);

std::string render_comparison_text(const ComparisonReport& report);
std::string comparison_to_json(const ComparisonReport& report);
std::string comparison_csv_rows(const ComparisonReport& report, bool with_header);

} // namespace emt
