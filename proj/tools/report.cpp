#include "report.hpp"

namespace quadhess::cli {

Json scalar_json(const Rational& x) { return x.get_str(); }
Json scalar_json(Real x) { return x; }
Json scalar_json(const Complex& x) { return Json::array({x.real(), x.imag()}); }

template <Scalar T>
Json point_json(const ColVector<T>& x) {
  Json arr = Json::array();
  for (const T& v : x.entries()) arr.push_back(scalar_json(v));
  return arr;
}

template <Scalar T>
Json checkpoint_json(const Checkpoint<T>& cp) {
  Json j;
  j["label"] = cp.label;
  j["defined"] = cp.defined;
  if (cp.defined) {
    if (cp.two_sided) {
      j["lhs"] = scalar_json(cp.lhs);
      j["rhs"] = scalar_json(cp.rhs);
      j["agrees"] = cp.agrees;
    } else {
      j["value"] = scalar_json(cp.lhs);
    }
  } else {
    j["note"] = cp.note;
  }
  return j;
}

template <Scalar T>
Json record_json(const VerificationReport<T>& report, std::size_t index,
                 std::optional<std::uint64_t> seed) {
  Json j;
  j["index"] = index;
  if (seed) j["seed"] = *seed;
  j["point"] = point_json(report.point);
  j["branch"] = to_string(report.branch);
  j["mode"] = std::string(to_string(report.mode));
  j["status"] = to_string(report.status);
  j["lhs"] = report.lhs ? scalar_json(*report.lhs) : Json(nullptr);
  j["rhs"] = report.rhs ? scalar_json(*report.rhs) : Json(nullptr);
  j["discrepancy"] = report.discrepancy ? scalar_json(*report.discrepancy) : Json(nullptr);
  if (!report.reason.empty()) j["reason"] = report.reason;
  Json cps = Json::array();
  for (const auto& cp : report.checkpoints) cps.push_back(checkpoint_json(cp));
  j["checkpoints"] = std::move(cps);
  return j;
}

void tally(Summary& summary, VerifyStatus status) {
  switch (status) {
    case VerifyStatus::verified: ++summary.verified; break;
    case VerifyStatus::skipped: ++summary.skipped; break;
    case VerifyStatus::failed: ++summary.failed; break;
  }
}

Json summary_json(const Summary& summary) {
  Json j;
  j["verified"] = summary.verified;
  j["skipped"] = summary.skipped;
  j["failed"] = summary.failed;
  return j;
}

Summary summarize_records(const nlohmann::json& report) {
  Summary s;
  for (const auto& rec : report.at("records")) {
    const std::string status = rec.at("status").get<std::string>();
    if (status == "verified") {
      ++s.verified;
    } else if (status == "skipped") {
      ++s.skipped;
    } else if (status == "failed") {
      ++s.failed;
    } else {
      throw Error(ErrorKind::parse, "unknown record status '" + status + "'");
    }
  }
  return s;
}

template <Scalar T>
std::string format_point(const ColVector<T>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i > 0) s += ", ";
    s += format_scalar(x[i]);
  }
  return s + ")";
}

template <Scalar T>
void print_checkpoints(std::ostream& out, const std::vector<Checkpoint<T>>& checkpoints) {
  for (const auto& cp : checkpoints) {
    out << "  " << cp.label << ": ";
    if (!cp.defined) {
      out << "undefined (" << cp.note << ")\n";
    } else if (!cp.two_sided) {
      out << format_scalar(cp.lhs) << "\n";
    } else {
      out << format_scalar(cp.lhs) << " = " << format_scalar(cp.rhs)
          << (cp.agrees ? " [agree]" : " [DISAGREE]") << "\n";
    }
  }
}

template <Scalar T>
void print_report(std::ostream& out, const VerificationReport<T>& report) {
  out << "mode: " << to_string(report.mode) << "\n";
  out << "point: " << format_point(report.point) << "\n";
  out << "branch: " << to_string(report.branch) << "\n";
  out << "status: " << to_string(report.status) << "\n";
  if (!report.reason.empty()) out << "reason: " << report.reason << "\n";
  if (report.lhs) out << "lhs: " << format_scalar(*report.lhs) << "\n";
  if (report.rhs) out << "rhs: " << format_scalar(*report.rhs) << "\n";
  if (report.discrepancy) out << "discrepancy: " << format_scalar(*report.discrepancy) << "\n";
  if (!report.checkpoints.empty()) {
    out << "checkpoints:\n";
    print_checkpoints(out, report.checkpoints);
  }
}

#define QUADHESS_INSTANTIATE_REPORT(T)                                                          \
  template Json point_json(const ColVector<T>&);                                                \
  template Json checkpoint_json(const Checkpoint<T>&);                                          \
  template Json record_json(const VerificationReport<T>&, std::size_t,                          \
                            std::optional<std::uint64_t>);                                      \
  template void print_report(std::ostream&, const VerificationReport<T>&);                      \
  template void print_checkpoints(std::ostream&, const std::vector<Checkpoint<T>>&);            \
  template std::string format_point(const ColVector<T>&);

QUADHESS_INSTANTIATE_REPORT(Rational)
QUADHESS_INSTANTIATE_REPORT(Real)
QUADHESS_INSTANTIATE_REPORT(Complex)

#undef QUADHESS_INSTANTIATE_REPORT

}  // namespace quadhess::cli
