#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibcat/io.hpp"

namespace fibcat {

struct SuiteOptions {
  std::uint64_t seed = 1;
  // Instance count for each randomized family; 0 keeps the defaults.
  int size = 0;
  int threads = 1;
  bool timing = false;
  // Failing instances are written here as JSON when non-empty.
  std::string artifact_dir;
  // Criteria to run; empty means all twelve.
  std::vector<int> criteria;
};

struct InstanceFailure {
  int index = 0;
  std::uint64_t seed = 0;
  std::string detail;
  Json inputs;  // documents reproducing the instance
};

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  int instances = 0;
  int failures = 0;
  std::string detail;
  std::vector<InstanceFailure> failed;
  double seconds = 0;
};

struct SuiteReport {
  SuiteOptions options;
  std::vector<CriterionResult> results;
  bool pass() const;
};

const std::vector<std::string>& criterion_names();  // index 0 is criterion 1

// Seed of instance i of criterion c.
std::uint64_t instance_seed(std::uint64_t seed, int criterion, int index);

CriterionResult run_criterion(int number, const SuiteOptions& options);
// Criterion 12 re-runs 1 to 11 with another thread count and compares the
// emitted reports byte for byte.
SuiteReport run_suite(const SuiteOptions& options);

// Deterministic for fixed seed and size; timings only when options.timing.
Json emit_report(const SuiteReport& report);
// One file per failing instance; returns the paths written.
std::vector<std::string> write_failure_artifacts(const SuiteReport& report);

// Canonical map colim(G ∘ F) → colim(G) on element classes.
bool colimit_map_bijective(const Functor& f, const SetFunctor& g);

}  // namespace fibcat
