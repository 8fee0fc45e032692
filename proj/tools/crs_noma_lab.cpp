#include <iostream>
#include <string>
#include <vector>

#include "crsnoma/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = crsnoma::cli;
  const std::vector<std::string> args(argv + 1, argv + argc);
  cli::RunSpec spec;
  try {
    spec = cli::parse_and_validate(args);
  } catch (const cli::UsageError& e) {
    if (e.exit_code() == cli::exit_code::kOk) {
      std::cout << e.what();
    } else {
      std::cerr << "usage error: " << e.what() << "\nRun with --help for the list of options.\n";
    }
    return e.exit_code();
  }
  return cli::execute(spec, std::cout, std::cerr);
}
