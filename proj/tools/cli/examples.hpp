#pragma once

#include <string>
#include <vector>

namespace cli {

struct ExampleCheck {
  std::string name;
  double value = 0.0;
  std::string expected;  // human-readable target with tolerance
  bool pass = false;
};

struct ExampleReport {
  int id = 0;
  std::string title;
  std::vector<ExampleCheck> checks;
  std::vector<std::string> notes;  // extra diagnostics, one line each
  bool pass() const;
};

// Rebuilds one of the five reference pathologies and runs its diagnostic.
// Throws fluidmatch::ValidationError for an id outside 1..5.
ExampleReport run_reference_example(int id, std::size_t resolution = 200);

}  // namespace cli
