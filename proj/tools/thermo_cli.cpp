#include <iostream>

#include "thermo/cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = thermo::cli::parse_command_line(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return thermo::cli::run(*parsed.config, std::cout, std::cerr);
}
