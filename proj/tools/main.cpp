#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  chowkit::cli::CommandResult r;
  try {
    r = chowkit::cli::run_command(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!r.message.empty()) (r.exit_code == chowkit::cli::kOk ? std::cout : std::cerr) << r.message << "\n";
  if (!r.output.is_null()) std::cout << (r.json_output ? r.output.dump(2) + "\n" : chowkit::cli::render_text(r.output));
  return r.exit_code;
}
