#include <string>
#include <vector>

#include "trigspline/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trigspline::cli::run(args);
}
