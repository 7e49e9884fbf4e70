#include "emt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "emt/coeba.hpp"
#include "emt/mfea.hpp"

namespace emt {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.push_back(sep);
        out += parts[i];
    }
    return out;
}

SolverResult dispatch(const std::string& solver, const std::vector<const TspInstance*>& tasks,
                      std::uint64_t seed, std::optional<std::uint64_t> budget_override,
                      const ConfigMap& overrides, ConfigMap& effective) {
    if (solver == "coeba") {
        CoebaConfig cfg;
        apply_config(overrides, cfg);
        if (budget_override) cfg.budget = *budget_override;
        cfg.seed = seed;
        effective = describe(cfg);
        return run_coeba(tasks, cfg);
    }
    if (solver == "mfea") {
        MfeaConfig cfg;
        apply_config(overrides, cfg);
        if (budget_override) cfg.budget = *budget_override;
        cfg.seed = seed;
        effective = describe(cfg);
        return run_mfea(tasks, cfg);
    }
    throw std::invalid_argument("unknown solver: " + solver + " (expected coeba or mfea)");
}

} // namespace

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    auto parse_u64 = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            std::uint64_t v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("seeds: not an integer: '" + s + "'");
        }
    };
    auto range_at = text.find("..") != std::string::npos ? text.find("..")
                    : text.find('-') != std::string::npos ? text.find('-')
                                                          : std::string::npos;
    if (range_at != std::string::npos) {
        const std::size_t skip = text[range_at] == '.' ? 2 : 1;
        const std::uint64_t lo = parse_u64(text.substr(0, range_at));
        const std::uint64_t hi = parse_u64(text.substr(range_at + skip));
        if (hi < lo) throw std::invalid_argument("seeds: range upper bound below lower bound");
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        return seeds;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        seeds.push_back(parse_u64(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return seeds;
}

RunRecord run_single(const InstanceStore& store, const Scenario& scenario,
                     const std::string& solver, std::uint64_t seed,
                     std::optional<std::uint64_t> budget_override, const ConfigMap& overrides) {
    const std::vector<const TspInstance*> tasks = store.tasks_for(scenario);

    RunRecord record;
    record.scenario = scenario.name;
    record.solver = solver;
    record.seed = seed;

    const auto start = std::chrono::steady_clock::now();
    SolverResult result = dispatch(solver, tasks, seed, budget_override, overrides, record.config);
    record.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    record.budget = std::stoull(record.config.at("budget"));
    record.evaluations_used = result.evaluations_used;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        RunTaskResult task;
        task.instance = scenario.instance_names[k];
        task.dimension = tasks[k]->dimension();
        task.best_fitness = result.per_task[k].fitness;
        task.best_tour = result.per_task[k].tour.to_string();
        if (auto opt = store.optimum(task.instance); opt && task.best_fitness < *opt)
            throw std::runtime_error("run produced a tour shorter than the known optimum of " +
                                     task.instance + ": " + std::to_string(task.best_fitness) +
                                     " < " + std::to_string(*opt));
        record.tasks.push_back(std::move(task));
    }
    record.trace = std::move(result.trace);
    return record;
}

std::vector<RunRecord> run_experiment(const InstanceStore& store, const Scenario& scenario,
                                      const std::string& solver,
                                      const std::vector<std::uint64_t>& seeds,
                                      std::optional<std::uint64_t> budget_override,
                                      const ConfigMap& overrides, const std::string& out_dir,
                                      int jobs) {
    if (seeds.empty()) throw std::invalid_argument("run_experiment: no seeds given");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
        throw std::invalid_argument("run_experiment: seeds must be distinct");

    // preload instances so worker threads only read the store
    store.tasks_for(scenario);

    std::vector<RunRecord> records(seeds.size());
    if (jobs < 1) jobs = 1;
    jobs = std::min<int>(jobs, (int)seeds.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= seeds.size()) return;
            try {
                records[i] = run_single(store, scenario, solver, seeds[i], budget_override,
                                        overrides);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (const RunRecord& record : records)
            write_run_record(record, (fs::path(out_dir) / run_record_filename(record)).string());
        append_results_csv(records, (fs::path(out_dir) / "results.csv").string());
    }
    return records;
}

std::string run_record_filename(const RunRecord& record) {
    return record.scenario + "__" + record.solver + "__seed" + std::to_string(record.seed) +
           ".json";
}

std::string serialize_run_record(const RunRecord& record) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["scenario"] = record.scenario;
    doc["solver"] = record.solver;
    doc["seed"] = record.seed;
    doc["budget"] = record.budget;
    doc["evaluations_used"] = record.evaluations_used;
    doc["wall_clock_seconds"] = record.wall_clock_seconds;
    ordered_json tasks = ordered_json::array();
    for (const RunTaskResult& t : record.tasks) {
        ordered_json jt;
        jt["instance"] = t.instance;
        jt["dimension"] = t.dimension;
        jt["best_fitness"] = t.best_fitness;
        jt["best_tour"] = t.best_tour;
        tasks.push_back(std::move(jt));
    }
    doc["tasks"] = std::move(tasks);
    ordered_json trace = ordered_json::array();
    for (const TraceRow& row : record.trace)
        trace.push_back({row.evaluations, row.task, row.best_fitness});
    doc["trace"] = std::move(trace);
    doc["config"] = record.config;
    return doc.dump(2) + "\n";
}

RunRecord parse_run_record(const std::string& json_text) {
    ordered_json doc = ordered_json::parse(json_text);
    RunRecord record;
    record.scenario = doc.at("scenario").get<std::string>();
    record.solver = doc.at("solver").get<std::string>();
    record.seed = doc.at("seed").get<std::uint64_t>();
    record.budget = doc.at("budget").get<std::uint64_t>();
    record.evaluations_used = doc.at("evaluations_used").get<std::uint64_t>();
    record.wall_clock_seconds = doc.at("wall_clock_seconds").get<double>();
    for (const auto& jt : doc.at("tasks")) {
        RunTaskResult t;
        t.instance = jt.at("instance").get<std::string>();
        t.dimension = jt.at("dimension").get<int>();
        t.best_fitness = jt.at("best_fitness").get<long long>();
        t.best_tour = jt.at("best_tour").get<std::string>();
        record.tasks.push_back(std::move(t));
    }
    for (const auto& jr : doc.at("trace"))
        record.trace.push_back({jr.at(0).get<std::uint64_t>(), jr.at(1).get<int>(),
                                jr.at(2).get<long long>()});
    record.config = doc.at("config").get<ConfigMap>();
    return record;
}

void write_run_record(const RunRecord& record, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write run record: " + path);
    f << serialize_run_record(record);
}

RunRecord read_run_record(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read run record: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_run_record(ss.str());
}

const char* kResultsCsvHeader =
    "scenario,solver,seed,budget,evaluations_used,wall_clock_seconds,instances,best_fitnesses";

std::string run_record_csv_row(const RunRecord& record) {
    std::vector<std::string> names, fits;
    for (const RunTaskResult& t : record.tasks) {
        names.push_back(t.instance);
        fits.push_back(std::to_string(t.best_fitness));
    }
    std::ostringstream row;
    row << record.scenario << ',' << record.solver << ',' << record.seed << ',' << record.budget
        << ',' << record.evaluations_used << ',' << record.wall_clock_seconds << ','
        << join(names, ';') << ',' << join(fits, ';');
    return row.str();
}

void append_results_csv(const std::vector<RunRecord>& records, const std::string& csv_path) {
    const bool fresh = !fs::exists(csv_path);
    std::ofstream f(csv_path, std::ios::app);
    if (!f) throw std::runtime_error("cannot open results csv: " + csv_path);
    if (fresh) f << kResultsCsvHeader << "\n";
    for (const RunRecord& record : records) f << run_record_csv_row(record) << "\n";
}

std::vector<RunRecord> load_records(const std::string& dir, const std::string& scenario,
                                    const std::string& solver) {
    std::vector<RunRecord> out;
    const std::string prefix = scenario + "__" + solver + "__seed";
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) == 0 && name.size() > 5 &&
            name.substr(name.size() - 5) == ".json")
            files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    for (const std::string& f : files) out.push_back(read_run_record(f));
    std::stable_sort(out.begin(), out.end(),
                     [](const RunRecord& a, const RunRecord& b) { return a.seed < b.seed; });
    return out;
}

std::vector<std::string> scenarios_present(const std::string& dir) {
    std::set<std::string> found;
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        const auto sep = name.find("__");
        if (sep != std::string::npos) found.insert(name.substr(0, sep));
    }
    std::vector<std::string> out;
    for (const Scenario& s : builtin_scenarios())
        if (found.count(s.name)) out.push_back(s.name);
    return out;
}

ComparisonReport compare(const std::vector<RunRecord>& coeba_records,
                         const std::vector<RunRecord>& mfea_records, const InstanceStore& store) {
    if (coeba_records.size() < 2 || mfea_records.size() < 2)
        throw std::invalid_argument("compare: need at least 2 runs per solver");
    const std::string& scenario = coeba_records.front().scenario;
    for (const auto* group : {&coeba_records, &mfea_records})
        for (const RunRecord& r : *group)
            if (r.scenario != scenario)
                throw std::invalid_argument("compare: mixed scenarios (" + r.scenario + " vs " +
                                            scenario + ")");

    ComparisonReport report;
    report.scenario = scenario;
    report.coeba_runs = (int)coeba_records.size();
    report.mfea_runs = (int)mfea_records.size();

    const std::size_t num_tasks = coeba_records.front().tasks.size();
    for (std::size_t k = 0; k < num_tasks; ++k) {
        InstanceComparison cmp;
        cmp.instance = coeba_records.front().tasks[k].instance;
        cmp.dimension = coeba_records.front().tasks[k].dimension;
        cmp.optimum = store.optimum(cmp.instance);

        std::vector<double> a, b;
        for (const RunRecord& r : coeba_records) a.push_back((double)r.tasks[k].best_fitness);
        for (const RunRecord& r : mfea_records) {
            if (r.tasks[k].instance != cmp.instance)
                throw std::invalid_argument("compare: task order mismatch at " + cmp.instance);
            b.push_back((double)r.tasks[k].best_fitness);
        }
        cmp.coeba = summarize(a);
        cmp.mfea = summarize(b);
        cmp.verdict = cmp.coeba.mean < cmp.mfea.mean ? "WIN"
                      : cmp.coeba.mean > cmp.mfea.mean ? "LOSS"
                                                       : "TIE";
        cmp.wilcoxon = wilcoxon_rank_sum(a, b);
        if (cmp.optimum)
            cmp.coeba_gap_percent = 100.0 * (cmp.coeba.mean - (double)*cmp.optimum) /
                                    (double)*cmp.optimum;
        report.verdicts.push_back(cmp.verdict);
        report.instances.push_back(std::move(cmp));
    }
    return report;
}

std::string render_comparison_text(const ComparisonReport& report) {
    std::ostringstream out;
    out << "scenario " << report.scenario << "  (coeba runs: " << report.coeba_runs
        << ", mfea runs: " << report.mfea_runs << ")\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-8s %9s | %12s %12s %10s | %12s %12s %10s | %-4s %8s %10s %s\n",
                  "instance", "optimum", "coeba_best", "coeba_mean", "coeba_std", "mfea_best",
                  "mfea_mean", "mfea_std", "verd", "z", "p", "sig95");
    out << line;
    for (const InstanceComparison& c : report.instances) {
        std::snprintf(line, sizeof(line),
                      "%-8s %9s | %12.1f %12.1f %10.2f | %12.1f %12.1f %10.2f | %-4s %8.3f %10.5f %s\n",
                      c.instance.c_str(),
                      c.optimum ? std::to_string(*c.optimum).c_str() : "-", c.coeba.best,
                      c.coeba.mean, c.coeba.stddev, c.mfea.best, c.mfea.mean, c.mfea.stddev,
                      c.verdict.c_str(), c.wilcoxon.z_value, c.wilcoxon.p_two_sided,
                      c.wilcoxon.significant_at_95 ? "yes" : "no");
        out << line;
    }
    out << "verdicts: " << join(report.verdicts, '-') << "\n";
    return out.str();
}

std::string comparison_to_json(const ComparisonReport& report) {
    ordered_json doc;
    doc["scenario"] = report.scenario;
    doc["coeba_runs"] = report.coeba_runs;
    doc["mfea_runs"] = report.mfea_runs;
    ordered_json instances = ordered_json::array();
    for (const InstanceComparison& c : report.instances) {
        ordered_json jc;
        jc["instance"] = c.instance;
        jc["dimension"] = c.dimension;
        if (c.optimum) jc["optimum"] = *c.optimum;
        auto summary = [](const SampleSummary& s) {
            ordered_json j;
            j["best"] = s.best;
            j["mean"] = s.mean;
            j["std"] = s.stddev;
            j["n"] = s.n;
            return j;
        };
        jc["coeba"] = summary(c.coeba);
        jc["mfea"] = summary(c.mfea);
        jc["verdict"] = c.verdict;
        ordered_json jw;
        jw["rank_sum"] = c.wilcoxon.rank_sum_statistic;
        jw["z"] = c.wilcoxon.z_value;
        jw["p_two_sided"] = c.wilcoxon.p_two_sided;
        jw["significant_at_95"] = c.wilcoxon.significant_at_95;
        jw["exact_path"] = c.wilcoxon.exact_path;
        jc["wilcoxon"] = std::move(jw);
        if (c.coeba_gap_percent) jc["coeba_gap_percent"] = *c.coeba_gap_percent;
        instances.push_back(std::move(jc));
    }
    doc["instances"] = std::move(instances);
    doc["verdicts"] = report.verdicts;
    return doc.dump(2) + "\n";
}

std::string comparison_csv_rows(const ComparisonReport& report, bool with_header) {
    std::ostringstream out;
    if (with_header)
        out << "scenario,instance,optimum,coeba_best,coeba_mean,coeba_std,mfea_best,mfea_mean,"
               "mfea_std,verdict,z,p_two_sided,significant_at_95\n";
    char row[512];
    for (const InstanceComparison& c : report.instances) {
        std::snprintf(row, sizeof(row),
                      "%s,%s,%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%s,%.10g,%.10g,%s\n",
                      report.scenario.c_str(), c.instance.c_str(),
                      c.optimum ? std::to_string(*c.optimum).c_str() : "", c.coeba.best,
                      c.coeba.mean, c.coeba.stddev, c.mfea.best, c.mfea.mean, c.mfea.stddev,
                      c.verdict.c_str(), c.wilcoxon.z_value, c.wilcoxon.p_two_sided,
                      c.wilcoxon.significant_at_95 ? "yes" : "no");
        out << row;
    }
    return out.str();
}

} // namespace emt
