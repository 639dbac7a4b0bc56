// Exports the singular value field of the 4x4 pair member A on a small grid
// as CSV to stdout, ready for external contour plotting.

#include <cstdio>
#include <iostream>
#include <numbers>

#include "fourmean/fourmean.hpp"

int main(int argc, char** argv) {
  using namespace fourmean;
  const double alpha = argc > 1 ? std::atof(argv[1]) : 0.3;
  const FRPair pair = fr_pair(alpha, std::numbers::pi / 4.0);

  GridSpec grid;
  grid.nx = 61;
  grid.ny = 61;
  const SingularField field = singular_field(pair.a, grid);

  RunManifest manifest;
  manifest.command = "demo_field_export";
  manifest.config = json{{"alpha", alpha}};
  manifest.tool_version = "0.1.0";
  manifest.timestamp = "demo";
  std::cout << field_to_csv(field, manifest);
  return 0;
}
