#include <cstdio>
#include <iostream>

#include "arctest/acceptance.hpp"

// One line per acceptance criterion; failing claims are listed underneath.
int main() {
  const arctest::Limits limits;
  bool all = true;
  for (const arctest::Criterion& c : arctest::acceptance_criteria()) {
    const arctest::CriterionResult r = arctest::run_criterion(c, limits);
    all = all && r.passed();
    std::printf("%s criterion %d: %s (%.2f s, limit %.0f s)\n", r.passed() ? "PASS" : "FAIL", r.number,
                r.title.c_str(), r.seconds, r.limit_seconds);
    if (!r.within_limit()) std::printf("    time limit exceeded\n");
    for (const arctest::Claim& claim : r.claims) {
      if (claim.status == arctest::Status::Pass) continue;
      std::printf("    %s %s: %s\n", arctest::to_string(claim.status), claim.id.c_str(), claim.witness.dump().c_str());
      if (!claim.reason.empty()) std::printf("      %s\n", claim.reason.c_str());
    }
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
