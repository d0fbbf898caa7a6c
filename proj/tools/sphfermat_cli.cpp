#include "sphfermat/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  using namespace sphfermat::cli;
  std::ios::sync_with_stdio(false);
  try {
    std::string help;
    const auto config =
        parse_args(std::vector<std::string>(argv, argv + argc), &help);
    if (!config) {
      std::cout << help;
      return kExitOk;
    }
    const RunOutcome out = run(*config);
    std::cout << out.payload;
    if (!out.error.empty())
      std::cerr << out.error << '\n';
    return out.exit_code;
  } catch (const ValidationError &e) {
    std::cerr << "error: validation: " << e.what() << '\n';
    return kExitValidation;
  }
}
