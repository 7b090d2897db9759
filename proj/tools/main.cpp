// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
  return chronogan::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
