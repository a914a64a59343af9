// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "fraclap/acceptance.hpp"

int main(int argc, char** argv) {
  fraclap::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--sigma" && i + 1 < argc) {
      options.sigma = std::strtod(argv[++i], nullptr);
    } else if (arg == "--parallel") {
      options.parallel = true;
    } else {
      std::fprintf(stderr, "usage: %s [--sigma S] [--parallel]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  try {
    fraclap::run_acceptance(options, [&](const fraclap::CriterionResult& r) {
      if (!r.passed) ++failures;
      std::printf("%s [%d] %s (%.1fs): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                  r.detail.c_str());
      std::fflush(stdout);
    });
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 3;
  }
  std::printf("%d of %d criteria passed\n", fraclap::kCriterionCount - failures, fraclap::kCriterionCount);
  return failures == 0 ? 0 : 1;
}
