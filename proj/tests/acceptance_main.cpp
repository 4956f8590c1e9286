// Acceptance gate: one pass/fail line per criterion; nonzero exit on any
// failure. `heckelab repro` runs the same suite.

#include <cstring>
#include <iostream>

#include <hecke/acceptance.hpp>

int main(int argc, char** argv) {
  hecke::accept::Options opt;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
  auto results = hecke::accept::run_all(std::cout, opt);
  return hecke::accept::all_passed(results) ? 0 : 1;
}
