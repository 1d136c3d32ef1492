#pragma once

// Command-line front end; see run() for the subcommand set.  Kept apart
// from main() so the test suite can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace fibring::cli {

// Exit code 0: affirmative verdict; 1: negative verdict; 2: usage or
// input error.  `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fibring::cli
