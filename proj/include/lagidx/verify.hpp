#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lagidx/indices.hpp"

namespace lagidx {

/// Identity suites run by `verify`, in catalogue order.
const std::vector<std::string>& suite_names();

struct NamedMatrix {
  std::string name;
  Matrix value;
};

/// Everything one trial checked: the identity records, the inputs that
/// produced them, and an error message when the trial could not complete.
struct TrialResult {
  std::vector<VerificationRecord> records;
  std::vector<NamedMatrix> inputs;
  std::optional<std::string> error;
  int retries = 0;

  bool passed() const;
};

/// Runs one trial of `suite` at dimension n. Trials that hit a degenerate
/// crossing are redrawn up to five times with derived seeds.
TrialResult run_trial(std::string_view suite, int n, std::uint64_t seed, const TolerancePolicy& tol = {});

struct Counterexample {
  int n = 0;
  std::uint64_t trial_seed = 0;
  /// Dimension of the original failing trial before minimization.
  int original_n = 0;
  TrialResult result;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  long trials = 0;
  long checks = 0;
  long retries = 0;
  std::vector<Counterexample> failures;
};

struct VerifyReport {
  std::vector<SuiteReport> suites;

  bool ok() const;
  std::string text() const;
  /// Single JSON object.
  std::string machine() const;
};

struct VerifyOptions {
  /// Suite names; empty or {"all"} selects every suite.
  std::vector<std::string> suites;
  int n_min = 1;
  int n_max = 6;
  /// Trials per dimension.
  int trials = 200;
  std::uint64_t seed = 0;
  TolerancePolicy tol;
  /// Worker threads; 0 means one per hardware thread.
  unsigned threads = 0;
  bool minimize = true;
};

/// Seed of trial k at dimension n of a suite:
/// split_seed(master, label_stream(suite), (n << 32) | k).
std::uint64_t trial_seed(std::uint64_t master, std::string_view suite, int n, int k);

/// Runs the selected suites. Trials execute in a worker pool and are merged
/// by trial index, so the report depends only on the options. Each failing
/// trial is shrunk by halving n and drawing up to 32 fresh trials per size.
/// Throws InvalidArgument for unknown suite names or bad ranges.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace lagidx
