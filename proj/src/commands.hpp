#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace ttolab::cmd {

const std::vector<std::string>& command_names();
// Runs one subcommand on a merged configuration object and returns the output document
// (CSV or JSON, chosen by the "format" key). Library exceptions propagate.
std::string run(const std::string& name, const nlohmann::json& config);

}  // namespace ttolab::cmd
