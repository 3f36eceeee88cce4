#pragma once

#include "folmod/gg/finite.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace folmod::gg {

struct OracleConfig {
  uint64_t seed = 1;
  uint64_t bound = kDefaultBound;
  size_t abelian_cases = 200;
  size_t pruning_cases = 100;
  size_t mv_cases = 100;
  size_t les_cases = 100;
  // Regression fixture: flips the sign of one restriction next to the
  // attaching vertex after pruning. Must make the pruning suite fail.
  bool inject_prune_sign_bug = false;
};

struct SuiteReport {
  std::string name;
  size_t passed = 0, failed = 0, skipped = 0;
  std::string first_failure;  // JSON replay document
  double seconds = 0;         // not part of text()
  bool ok() const { return failed == 0; }
};

struct OracleReport {
  std::vector<SuiteReport> suites;
  bool ok() const;
  // Deterministic summary (no timings).
  std::string text() const;
};

SuiteReport run_abelian_agreement(const OracleConfig& c);
SuiteReport run_pruning_invariance(const OracleConfig& c);
SuiteReport run_mayer_vietoris(const OracleConfig& c);
SuiteReport run_long_exact(const OracleConfig& c);
OracleReport run_oracle(const OracleConfig& c);

}  // namespace folmod::gg
