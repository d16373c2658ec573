#pragma once

#include "ltf/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ltf {

// Invariant-family runner: each suite draws deterministic random instances
// from one seeded stream, checks the family's exact inequality on every one,
// and reports pass/fail counts with the worst margin seen.  Failures carry a
// serialized instance so any red run is reproducible by hand.

struct VerifyParams {
  int nmax = 0;            // 0 = suite default scale
  int instances = 0;       // 0 = suite default count
  int draws = 0;           // 0 = suite default (sampled-distance suites only)
  std::uint64_t seed = 0;
  int cap = kDefaultEnumCap;
  long row_cap = kDefaultLpRows;
};

struct VerifyFailure {
  json instance;       // inputs that reproduce the failing check
  std::uint64_t seed;  // suite seed the instance was drawn under
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  int instances = 0;
  int passed = 0;
  int failed = 0;
  double worst_margin = 0;  // smallest slack seen; what it measures is in the note
  std::string margin_note;
  std::uint64_t seed = 0;
  std::vector<VerifyFailure> failures;

  bool ok() const { return instances > 0 && failed == 0; }
};

/// The suite names run_verify_suite accepts.
const std::vector<std::string>& verify_suite_names();

/// Runs one invariant family at the given scale.  Unknown names throw
/// error("bad_suite"); in-family check failures are report content, never
/// exceptions.
VerifyReport run_verify_suite(const std::string& name, const VerifyParams& p = {});

json verify_report_to_json(const VerifyReport& r);

}  // namespace ltf
