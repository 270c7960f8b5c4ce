#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "quadhess/identity.hpp"

namespace quadhess::cli {

// Process exit codes; part of the command-line contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitSkipped = 2;
inline constexpr int kExitUsage = 64;

struct VerifyOptions {
  std::string q_path;
  std::string point;
  BranchSign branch = BranchSign::plus;
  ScalarKind mode = ScalarKind::exact;
  double tol = kDefaultFloatTolerance;
  std::optional<std::string> json_path;
};

struct SampleOptions {
  std::size_t n = 1;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  ScalarKind mode = ScalarKind::exact;
  double tol = kDefaultFloatTolerance;
  std::optional<std::string> json_path;
};

struct BenchOptions {
  std::vector<std::size_t> n_list;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  std::optional<std::string> csv_path;
};

struct CheckpointsOptions {
  std::string q_path;
  std::string point;
  ScalarKind mode = ScalarKind::exact;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);
int cmd_checkpoints(const CheckpointsOptions& opts, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// QUADHESS_THREADS if set (must be a positive integer), otherwise the
/// hardware concurrency.
std::size_t worker_count();

}  // namespace quadhess::cli
