// Acceptance gate: runs every criterion of the built-in suite at zero
// tolerance and prints one verdict line each.  Exit status is the number of
// failing criteria (capped so it stays a valid exit code).
#include <cstdio>
#include <string>

#include "henselkit/selftest.hpp"

int main() {
  std::vector<henselkit::criterion_result> results =
      henselkit::run_acceptance("all", 1);

  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %s  %s  (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                r.title.c_str(), r.seconds);
    // indent the detail under the verdict line
    std::string body = "    " + r.detail;
    size_t pos = 0;
    while ((pos = body.find('\n', pos)) != std::string::npos) {
      body.replace(pos, 1, "\n    ");
      pos += 5;
    }
    std::printf("%s\n", body.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed > 100 ? 100 : failed;
}
