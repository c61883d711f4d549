#pragma once

// Seeded verification sweeps over random samples. Sample i draws from its own
// generator seeded with (seed, i), so results do not depend on --jobs.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hypergon::verify {

struct Options {
  int n = 5;
  int samples = 20;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct Report {
  std::string identity;
  int samples = 0;
  /// Largest deviation from the identity over all samples.
  double max_abs = 0.0;
  double fd_error_estimate = 0.0;
  bool pass = false;
  /// Suite-specific quantities (e.g. the measured bracket constant).
  std::vector<std::pair<std::string, double>> extra;
};

const std::vector<std::string>& suite_names();
/// Throws DomainError for an unknown suite.
Report run(const std::string& suite, const Options& opt);

}  // namespace hypergon::verify
