#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "emt/tsplib.hpp"

namespace emt {

// A multitasking test case: the set of instances optimized jointly.
struct Scenario {
    std::string name;
    std::vector<std::string> instance_names; // K = size()
};

// The fifteen built-in test cases (ten 4-task, four 6-task, one 8-task).
const std::vector<Scenario>& builtin_scenarios();

// Throws std::invalid_argument for unknown names.
const Scenario& find_scenario(const std::string& name);

struct InstanceInfo {
    std::string name;
    int dimension = 0;
    long long optimum = 0; // best known tour length
};

// Loads <data_dir>/manifest.json.
std::vector<InstanceInfo> load_manifest(const std::string& data_dir);

// Lazily loads and caches instances from a data directory, cross-checking
// each against the manifest. Safe to share across worker threads.
class InstanceStore {
  public:
    explicit InstanceStore(std::string data_dir);

    const TspInstance& get(const std::string& name) const;
    std::optional<long long> optimum(const std::string& name) const;
    const std::string& data_dir() const { return data_dir_; }

    std::vector<const TspInstance*> tasks_for(const Scenario& scenario) const;

  private:
    std::string data_dir_;
    std::map<std::string, InstanceInfo> manifest_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::unique_ptr<TspInstance>> cache_;
};

} // namespace emt
