#pragma once

// End-to-end acceptance checks, shared by the acceptance test binary and
// `pfsa verify`. Every tolerance and sample count used below is fixed here.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pfsa::verify {

struct VerifyOptions {
  std::size_t max_n = 5;        // largest automaton (check 5) and list size (check 6, capped at 4)
  std::size_t steps = 40;       // sequence length for check 5
  std::size_t samples = 1000;   // random instances for checks 5, 7 and 8
  std::size_t traces = 10000;   // generated traces for check 11
  std::uint64_t seed = 20240;   // root seed for every randomized check
  // Corrupts one printed value in check 11 so the suite must report a failure.
  bool inject_fault = false;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  // Wall-clock budget in seconds; 0 when the check has none.
  double time_limit = 0.0;
};

CheckResult check_joint_decay(const VerifyOptions& options);          // 1
CheckResult check_marginal_decay(const VerifyOptions& options);       // 2
CheckResult check_s3_worked_example(const VerifyOptions& options);    // 3
CheckResult check_conditional_swap(const VerifyOptions& options);     // 4
CheckResult check_oracle_equivalence(const VerifyOptions& options);   // 5
CheckResult check_marginal_bridge(const VerifyOptions& options);      // 6
CheckResult check_sinkhorn(const VerifyOptions& options);             // 7
CheckResult check_vectorization(const VerifyOptions& options);        // 8
CheckResult check_householder(const VerifyOptions& options);          // 9
CheckResult check_state_counts(const VerifyOptions& options);         // 10
CheckResult check_trace_pipeline(const VerifyOptions& options);       // 11
CheckResult check_underflow_threshold(const VerifyOptions& options);  // 12

// Runs checks 1 through 12 in order.
std::vector<CheckResult> run_acceptance(const VerifyOptions& options);

// "PASS  3  s3 worked example (0.001 s)" followed by the detail when present.
std::string format_result(const CheckResult& result);

}  // namespace pfsa::verify
