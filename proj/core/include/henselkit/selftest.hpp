#pragma once
#include <string>
#include <vector>

namespace henselkit {

struct criterion_result {
  std::string id;    // stable tag, A1..A11
  std::string title;
  bool pass = false;
  std::string detail; // check counts, summary stats, first failing cases
  double seconds = 0.0;
};

// Runs the acceptance suite at tolerance zero.  `scope` is "all" or a module
// name (series, lifting, pointfinder, milnor, localglobal); "cli" is accepted
// and runs nothing, since the front end is exercised from outside.  Unknown
// scopes throw parse_error.  The seed drives every randomized criterion, so
// equal seeds give byte-identical reports.
std::vector<criterion_result> run_acceptance(const std::string& scope,
                                             unsigned long long seed);

} // namespace henselkit
