#include <fstream>
#include <iostream>
#include <sstream>

#include "opim/cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = opim::parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << '\n';
    return parsed.exit_code;
  }
  const auto& cfg = *parsed.config;
  if (!cfg.out_path) return opim::run(cfg, std::cout, std::cerr);

  std::ostringstream buffer;
  const int status = opim::run(cfg, buffer, std::cerr);
  std::ofstream out(*cfg.out_path);
  if (!out) {
    std::cerr << "error: cannot write '" << *cfg.out_path << "'\n";
    return opim::exit_status::usage;
  }
  out << buffer.str();
  return status;
}
