#pragma once

#include <string>
#include <vector>

namespace netex::cli {

// Runs one CLI invocation (arguments without the program name). Returns the
// process exit code; errors are reported on stderr as
// "error: <Category>: <detail>".
int run(std::vector<std::string> args);

}  // namespace netex::cli
