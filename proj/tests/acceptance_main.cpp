// One line per acceptance criterion. Exits 0 once every criterion has been evaluated
// (nonzero if one could not be evaluated at all);
// with --strict the exit status is the number of failing criteria. --report FILE
// also writes the lines to FILE, since ctest hides the output of passing tests.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "cqs/acceptance.hpp"

int main(int argc, char **argv)
{
  cqs::RunConfig cfg;
  bool strict = false;
  std::string report_path;
  for (int i = 1; i < argc; ++i)
  {
    const std::string arg = argv[i];
    if (arg == "--strict")
    {
      strict = true;
    }
    else if (arg == "--report" && i + 1 < argc)
    {
      report_path = argv[++i];
    }
    else
    {
      cfg = cqs::RunConfig::load(arg);
    }
  }
  const char *cache = std::getenv("CQS_CACHE_DIR");
  cqs::AcceptanceRun run(cfg, cache ? cache : "");

  using Check = cqs::CriterionResult (cqs::AcceptanceRun::*)();
  const Check checks[] = {
      &cqs::AcceptanceRun::orthogonality,         &cqs::AcceptanceRun::resolvent_identity,
      &cqs::AcceptanceRun::representation_agreement, &cqs::AcceptanceRun::asymptotic_collapse,
      &cqs::AcceptanceRun::plain_amplitudes,      &cqs::AcceptanceRun::modified_amplitudes,
      &cqs::AcceptanceRun::behavioral_contrast,   &cqs::AcceptanceRun::effective_potential_decay,
      &cqs::AcceptanceRun::degeneracy,
  };
  std::ofstream report;
  if (!report_path.empty())
  {
    report.open(report_path);
  }
  const auto emit = [&](const std::string &line) {
    std::fputs(line.c_str(), stdout);
    std::fflush(stdout);
    if (report.is_open())
    {
      report << line << std::flush;
    }
  };
  int failures = 0;
  int errors = 0;
  for (const Check check : checks)
  {
    const auto r = (run.*check)();
    char head[128];
    std::snprintf(head, sizeof head, "[%s] criterion %d (%s): ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
    char tail[32];
    std::snprintf(tail, sizeof tail, " [%.1f s]\n", r.seconds);
    emit(head + r.detail + tail);
    failures += r.pass ? 0 : 1;
    errors += r.detail.rfind("error:", 0) == 0 ? 1 : 0;
  }
  emit(std::to_string(9 - failures) + " of 9 criteria passed\n");
  return strict ? failures : (errors > 0 ? 1 : 0);
}
