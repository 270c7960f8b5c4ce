#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "quadhess/identity.hpp"

namespace quadhess::cli {

using Json = nlohmann::ordered_json;

/// Exact scalars serialize as "p/q" strings, reals as JSON numbers and
/// complex values as [re, im].
Json scalar_json(const Rational& x);
Json scalar_json(Real x);
Json scalar_json(const Complex& x);

template <Scalar T>
Json point_json(const ColVector<T>& x);

template <Scalar T>
Json checkpoint_json(const Checkpoint<T>& cp);

/// One ReportFile record. seed is the per-instance generator seed, if any.
template <Scalar T>
Json record_json(const VerificationReport<T>& report, std::size_t index,
                 std::optional<std::uint64_t> seed = std::nullopt);

struct Summary {
  std::size_t verified = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;

  std::size_t total() const noexcept { return verified + skipped + failed; }
  friend bool operator==(const Summary&, const Summary&) = default;
};

void tally(Summary& summary, VerifyStatus status);
Json summary_json(const Summary& summary);

/// Recounts the records of a parsed ReportFile.
Summary summarize_records(const nlohmann::json& report);

/// Human-readable multi-line rendering of one report.
template <Scalar T>
void print_report(std::ostream& out, const VerificationReport<T>& report);

template <Scalar T>
void print_checkpoints(std::ostream& out, const std::vector<Checkpoint<T>>& checkpoints);

template <Scalar T>
std::string format_point(const ColVector<T>& x);

}  // namespace quadhess::cli
