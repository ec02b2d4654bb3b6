#pragma once

#include <string>
#include <vector>

namespace apd::cli {

// Exit codes: 0 ok, 2 invalid input, 3 size-guard violation, 4 verification
// failure.
struct CommandResult {
  int exit_code = 0;
  std::string human;    // plain-text rendering
  std::string payload;  // JSON rendering
  bool json_requested = false;

  const std::string& output() const { return json_requested ? payload : human; }
};

// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

int main_entry(int argc, char** argv);

}  // namespace apd::cli
