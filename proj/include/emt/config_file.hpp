#pragma once

#include <map>
#include <string>

#include "emt/coeba.hpp"
#include "emt/mfea.hpp"

namespace emt {

// Flat key/value config text: one `key = value` per line, '#' comments.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

// Apply overrides onto defaults. Unknown keys throw; keys belonging to the
// other solver are ignored so one file can configure both.
void apply_config(const ConfigMap& cfg, CoebaConfig& out);
void apply_config(const ConfigMap& cfg, MfeaConfig& out);

ConfigMap describe(const CoebaConfig& cfg);
ConfigMap describe(const MfeaConfig& cfg);

} // namespace emt
