#pragma once

#include "descriptor.hpp"

#include <string>
#include <vector>

namespace affind::cli {

enum Exit { kPass = 0, kFail = 1, kInconclusive = 2 };

struct Result {
  Json report;
  std::vector<std::vector<std::string>> table;  ///< TSV rows, header first; empty for non-tabular commands
  int exit = kPass;
};

const std::vector<std::string>& command_names();
/// Throws DescriptorError or std::invalid_argument on usage errors.
Result run_command(const std::string& name, const Descriptor& d);

}  // namespace affind::cli
