#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toytheory/ring_linalg.hpp"

namespace toytheory::oracle {

struct CheckResult {
  std::string name;
  Scalar d = 0;
  std::size_t n = 0;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string counterexample;
  std::string note;
  double millis = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::size_t failures() const;
  // Wall-clock fields are left out unless asked for, so equal runs print equal bytes.
  std::string to_json(bool with_timings = false) const;
};

struct Options {
  std::vector<Scalar> moduli{2, 3};
  std::vector<std::size_t> sizes{1, 2};
  std::uint64_t seed = 1;
  // 0 means: read TOYTHEORY_ORACLE_THREADS, else hardware concurrency.
  unsigned threads = 0;
  std::uint64_t fuzz_cases = 1000;
};

std::vector<std::string> check_names();
Report run_oracle(const Options& options);

}  // namespace toytheory::oracle
