#pragma once

#include <string>
#include <vector>

namespace zenosim {

// Built-in parameter sets matching the shipped presets/*.cfg files.
const std::string& preset_text(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace zenosim
