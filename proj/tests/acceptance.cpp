// One PASS/FAIL line per acceptance criterion. A criterion passes when its
// check passes within its time budget.
#include <cstdio>
#include <map>

#include "gkdim/checks.hpp"

using namespace gkdim;

int main() {
  const std::map<int, double> budget_s{{1, 1},   {2, 1},  {3, 30}, {4, 60},  {5, 120}, {6, 30}, {7, 300},
                                       {8, 60},  {9, 60}, {10, 10}, {11, 300}, {12, 10}, {13, 60}};
  CheckOptions opt;
  opt.corpus = load_corpus(GKDIM_CORPUS_DIR);
  int failures = 0;
  double total = 0;
  for (const auto& def : acceptance_checks()) {
    CheckRecord r = run_check(def, opt);
    const double limit = budget_s.at(def.id);
    const bool in_time = r.seconds <= limit;
    const bool ok = r.status == "pass" && in_time;
    failures += ok ? 0 : 1;
    total += r.seconds;
    std::printf("%s %2d %-28s %8.2fs (budget %gs)", ok ? "PASS" : "FAIL", def.id, def.name.c_str(), r.seconds, limit);
    if (r.status != "pass") std::printf("  %s: %s", r.status.c_str(), r.witness.c_str());
    if (!in_time) std::printf("  over budget");
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed, total %.1fs\n", static_cast<int>(acceptance_checks().size()) - failures,
              acceptance_checks().size(), total);
  return failures == 0 ? 0 : 1;
}
