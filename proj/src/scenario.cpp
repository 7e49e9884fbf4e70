#include "emt/scenario.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace emt {

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> cases = {
        {"Test_Case_4_1", {"pr76", "pr107", "pr124", "pr136"}},
        {"Test_Case_4_2", {"pr144", "pr152", "pr226", "pr264"}},
        {"Test_Case_4_3", {"pr76", "pr107", "pr226", "pr264"}},
        {"Test_Case_4_4", {"pr124", "pr136", "pr144", "pr152"}},
        {"Test_Case_4_5", {"pr76", "pr124", "pr136", "pr226"}},
        {"Test_Case_4_6", {"pr107", "pr144", "pr152", "pr264"}},
        {"Test_Case_4_7", {"pr76", "pr107", "pr136", "pr152"}},
        {"Test_Case_4_8", {"pr124", "pr144", "pr226", "pr264"}},
        {"Test_Case_4_9", {"pr76", "pr136", "pr144", "pr226"}},
        {"Test_Case_4_10", {"pr107", "pr124", "pr152", "pr264"}},
        {"Test_Case_6_1", {"pr76", "pr107", "pr124", "pr136", "pr144", "pr152"}},
        {"Test_Case_6_2", {"pr124", "pr136", "pr144", "pr152", "pr226", "pr264"}},
        {"Test_Case_6_3", {"pr76", "pr107", "pr144", "pr152", "pr226", "pr264"}},
        {"Test_Case_6_4", {"pr76", "pr107", "pr136", "pr144", "pr226", "pr264"}},
        {"Test_Case_8",
         {"pr76", "pr107", "pr124", "pr136", "pr144", "pr152", "pr226", "pr264"}},
    };
    return cases;
}

const Scenario& find_scenario(const std::string& name) {
    for (const Scenario& s : builtin_scenarios())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown scenario: " + name);
}

std::vector<InstanceInfo> load_manifest(const std::string& data_dir) {
    const std::string path = data_dir + "/manifest.json";
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open manifest: " + path);
    nlohmann::json doc = nlohmann::json::parse(f);
    std::vector<InstanceInfo> out;
    for (const auto& item : doc.at("instances")) {
        InstanceInfo info;
        info.name = item.at("name").get<std::string>();
        info.dimension = item.at("dimension").get<int>();
        info.optimum = item.at("optimum").get<long long>();
        out.push_back(std::move(info));
    }
    return out;
}

InstanceStore::InstanceStore(std::string data_dir) : data_dir_(std::move(data_dir)) {
    for (InstanceInfo& info : load_manifest(data_dir_)) manifest_[info.name] = std::move(info);
}

const TspInstance& InstanceStore::get(const std::string& name) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(name);
    if (it != cache_.end()) return *it->second;

    auto mit = manifest_.find(name);
    if (mit == manifest_.end())
        throw std::invalid_argument("instance not in manifest: " + name);
    auto inst = std::make_unique<TspInstance>(load_instance_file(data_dir_ + "/" + name + ".tsp"));
    if (inst->dimension() != mit->second.dimension)
        throw std::runtime_error("instance " + name + " dimension " +
                                 std::to_string(inst->dimension()) +
                                 " does not match manifest dimension " +
                                 std::to_string(mit->second.dimension));
    const TspInstance& ref = *inst;
    cache_[name] = std::move(inst);
    return ref;
}

std::optional<long long> InstanceStore::optimum(const std::string& name) const {
    auto it = manifest_.find(name);
    if (it == manifest_.end()) return std::nullopt;
    return it->second.optimum;
}

std::vector<const TspInstance*> InstanceStore::tasks_for(const Scenario& scenario) const {
    std::vector<const TspInstance*> tasks;
    tasks.reserve(scenario.instance_names.size());
    for (const std::string& name : scenario.instance_names) tasks.push_back(&get(name));
    return tasks;
}

} // namespace emt
