#include "rholab/cli.hpp"

int main(int argc, char** argv) {
  return rholab::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
