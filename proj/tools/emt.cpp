#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emt/harness.hpp"

namespace {

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary multitasking benchmark: a coevolutionary bat algorithm and an "
                 "MFEA baseline jointly optimizing sets of TSPLIB instances"};
    app.require_subcommand(1);

    std::string data_dir = "data";
    app.add_option("--data", data_dir, "Instance data directory")->capture_default_str();

    // run
    auto* run_cmd = app.add_subcommand("run", "Run one solver on one scenario");
    std::string scenario_name, solver, seeds_text = "1..20", config_path, out_dir = "results";
    std::uint64_t budget_flag = 0;
    int jobs = 1;
    run_cmd->add_option("--scenario", scenario_name, "Scenario name (see `scenarios --list`)")
        ->required();
    run_cmd->add_option("--solver", solver, "coeba or mfea")->required();
    run_cmd->add_option("--seeds", seeds_text, "Seed list or range, e.g. 1..20 or 3,7")
        ->capture_default_str();
    run_cmd->add_option("--budget", budget_flag,
                        "Objective-evaluation budget (overrides the config file)");
    run_cmd->add_option("--config", config_path, "Flat key = value config file");
    run_cmd->add_option("--out", out_dir, "Output directory for run records")
        ->capture_default_str();
    run_cmd->add_option("--jobs", jobs, "Worker threads across seeds")->capture_default_str();

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "Compare both solvers on one scenario");
    std::string in_dir = "results", json_out, csv_out;
    compare_cmd->add_option("--scenario", scenario_name, "Scenario name")->required();
    compare_cmd->add_option("--in", in_dir, "Directory with run records")->capture_default_str();
    compare_cmd->add_option("--json", json_out, "Also write the report as JSON to this path");
    compare_cmd->add_option("--csv", csv_out, "Also write the report as CSV to this path");

    // scenarios
    auto* scenarios_cmd = app.add_subcommand("scenarios", "List built-in scenarios");
    bool list_flag = false;
    scenarios_cmd->add_flag("--list", list_flag, "List scenario names and instances");

    // report
    auto* report_cmd = app.add_subcommand("report", "Comparison report over recorded scenarios");
    bool report_all = false;
    report_cmd->add_flag("--all", report_all, "Report every scenario found in the input dir");
    report_cmd->add_option("--in", in_dir, "Directory with run records")->capture_default_str();
    report_cmd->add_option("--json", json_out, "Write combined JSON report to this path");
    report_cmd->add_option("--csv", csv_out, "Write combined CSV report to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scenarios_cmd->parsed()) {
            for (const emt::Scenario& s : emt::builtin_scenarios()) {
                std::printf("%-16s K=%zu ", s.name.c_str(), s.instance_names.size());
                for (const std::string& inst : s.instance_names) std::printf(" %s", inst.c_str());
                std::printf("\n");
            }
            return 0;
        }

        if (run_cmd->parsed()) {
            emt::InstanceStore store(data_dir);
            const emt::Scenario& scenario = emt::find_scenario(scenario_name);
            emt::ConfigMap overrides;
            if (!config_path.empty()) overrides = emt::load_config_file(config_path);
            std::optional<std::uint64_t> budget;
            if (run_cmd->count("--budget")) budget = budget_flag;
            const std::vector<std::uint64_t> seeds = emt::parse_seeds(seeds_text);
            auto records = emt::run_experiment(store, scenario, solver, seeds, budget, overrides,
                                               out_dir, jobs);
            for (const emt::RunRecord& r : records) {
                std::printf("%s seed=%llu evals=%llu wall=%.2fs ", r.solver.c_str(),
                            (unsigned long long)r.seed, (unsigned long long)r.evaluations_used,
                            r.wall_clock_seconds);
                for (const emt::RunTaskResult& t : r.tasks)
                    std::printf(" %s=%lld", t.instance.c_str(), t.best_fitness);
                std::printf("\n");
            }
            std::printf("wrote %zu records to %s\n", records.size(), out_dir.c_str());
            return 0;
        }

        if (compare_cmd->parsed()) {
            emt::InstanceStore store(data_dir);
            auto coeba_records = emt::load_records(in_dir, scenario_name, "coeba");
            auto mfea_records = emt::load_records(in_dir, scenario_name, "mfea");
            auto report = emt::compare(coeba_records, mfea_records, store);
            std::fputs(emt::render_comparison_text(report).c_str(), stdout);
            if (!json_out.empty()) write_text_file(json_out, emt::comparison_to_json(report));
            if (!csv_out.empty()) write_text_file(csv_out, emt::comparison_csv_rows(report, true));
            return 0;
        }

        if (report_cmd->parsed()) {
            if (!report_all) {
                std::fputs("report: pass --all to report every recorded scenario\n", stderr);
                return 2;
            }
            emt::InstanceStore store(data_dir);
            std::string combined_json = "[\n", combined_csv;
            bool first = true;
            for (const std::string& name : emt::scenarios_present(in_dir)) {
                auto coeba_records = emt::load_records(in_dir, name, "coeba");
                auto mfea_records = emt::load_records(in_dir, name, "mfea");
                if (coeba_records.size() < 2 || mfea_records.size() < 2) {
                    std::fprintf(stderr, "skipping %s: fewer than 2 runs per solver\n",
                                 name.c_str());
                    continue;
                }
                auto report = emt::compare(coeba_records, mfea_records, store);
                std::fputs(emt::render_comparison_text(report).c_str(), stdout);
                std::fputs("\n", stdout);
                if (!first) combined_json += ",\n";
                combined_json += emt::comparison_to_json(report);
                combined_csv += emt::comparison_csv_rows(report, first);
                first = false;
            }
            combined_json += "]\n";
            if (!json_out.empty()) write_text_file(json_out, combined_json);
            if (!csv_out.empty()) write_text_file(csv_out, combined_csv);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
