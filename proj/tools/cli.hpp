#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cmtool {

// Runs one command line (without the program name). Returns the exit code:
// 0 success, 1 domain error, 2 usage error. Errors go to err as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* tool_version();

}  // namespace cmtool
