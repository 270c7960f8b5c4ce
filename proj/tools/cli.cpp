#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "quadhess/oracle.hpp"
#include "quadric_file.hpp"
#include "report.hpp"

namespace quadhess::cli {
namespace {

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::parse, "cannot write '" + path + "'");
  f << body;
}

void write_json_file(const std::string& path, const Json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

int exit_code_for(VerifyStatus status) {
  switch (status) {
    case VerifyStatus::verified: return kExitOk;
    case VerifyStatus::skipped: return kExitSkipped;
    case VerifyStatus::failed: return kExitFailed;
  }
  return kExitFailed;
}

// Runs task(i) for i in [0, count) on a small worker pool. Results are
// written by index, so scheduling never affects output order.
template <class F>
void parallel_for(std::size_t count, F&& task) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <Scalar T>
int verify_as(const VerifyOptions& opts, std::ostream& out) {
  const QuadricSurface<T> q = read_quadric_file<T>(opts.q_path);
  const ColVector<T> x = parse_point<T>(opts.point);
  if (x.dim() != q.n()) {
    throw Error(ErrorKind::parse, "point has " + std::to_string(x.dim()) +
                                      " coordinates but the quadric has n = " +
                                      std::to_string(q.n()));
  }
  const VerificationReport<T> report = verify_identity(q, x, opts.branch, opts.tol);
  out << "quadric: " << opts.q_path << " (n = " << q.n() << ")\n";
  print_report(out, report);

  if (opts.json_path) {
    Summary summary;
    tally(summary, report.status);
    Json doc;
    doc["command"] = "verify";
    doc["mode"] = std::string(to_string(kind_of<T>));
    doc["tol"] = opts.tol;
    doc["summary"] = summary_json(summary);
    doc["records"] = Json::array({record_json(report, 0)});
    write_json_file(*opts.json_path, doc);
  }
  return exit_code_for(report.status);
}

template <Scalar T>
Instance<T> sample_instance(const GenConfig& cfg) {
  if constexpr (std::same_as<T, Complex>) {
    return random_complex_quadric(cfg);
  } else {
    Instance<Rational> inst = random_quadric(cfg);
    if constexpr (std::same_as<T, Rational>) {
      return inst;
    } else {
      return Instance<T>{convert<T>(inst.q), convert<T>(inst.x)};
    }
  }
}

template <Scalar T>
struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<VerificationReport<T>> reports;
};

template <Scalar T>
int sample_as(const SampleOptions& opts, std::ostream& out) {
  std::vector<TrialResult<T>> results(opts.trials);
  parallel_for(opts.trials, [&](std::size_t i) {
    GenConfig cfg;
    cfg.n = opts.n;
    cfg.seed = derive_seed(opts.seed, i);
    TrialResult<T>& res = results[i];
    res.seed = cfg.seed;
    try {
      const Instance<T> inst = sample_instance<T>(cfg);
      for (BranchSign b : {BranchSign::plus, BranchSign::minus}) {
        res.reports.push_back(verify_identity(inst.q, inst.x, b, opts.tol));
      }
    } catch (const Error& e) {
      for (BranchSign b : {BranchSign::plus, BranchSign::minus}) {
        VerificationReport<T> skipped;
        skipped.branch = b;
        skipped.status = VerifyStatus::skipped;
        skipped.reason = std::string(to_string(e.kind())) + ": " + e.what();
        res.reports.push_back(std::move(skipped));
      }
    }
  });

  Summary summary;
  std::optional<Discrepancy<T>> worst;
  Json records = Json::array();
  std::size_t index = 0;
  for (const auto& res : results) {
    for (const auto& rep : res.reports) {
      tally(summary, rep.status);
      if (rep.discrepancy && (!worst || *worst < *rep.discrepancy)) worst = *rep.discrepancy;
      if (opts.json_path) records.push_back(record_json(rep, index, res.seed));
      ++index;
    }
  }

  out << "sample: n=" << opts.n << " trials=" << opts.trials << " seed=" << opts.seed
      << " mode=" << to_string(kind_of<T>) << "\n";
  out << "verified: " << summary.verified << "\n";
  out << "skipped: " << summary.skipped << "\n";
  out << "failed: " << summary.failed << "\n";
  out << "max_discrepancy: " << (worst ? format_scalar(*worst) : std::string("n/a")) << "\n";

  if (opts.json_path) {
    Json doc;
    doc["command"] = "sample";
    doc["n"] = opts.n;
    doc["trials"] = opts.trials;
    doc["seed"] = opts.seed;
    doc["mode"] = std::string(to_string(kind_of<T>));
    doc["tol"] = opts.tol;
    doc["summary"] = summary_json(summary);
    doc["records"] = std::move(records);
    write_json_file(*opts.json_path, doc);
  }
  return summary.failed == 0 ? kExitOk : kExitFailed;
}

template <Scalar T>
int checkpoints_as(const CheckpointsOptions& opts, std::ostream& out) {
  const QuadricSurface<T> q = read_quadric_file<T>(opts.q_path);
  const ColVector<T> x = parse_point<T>(opts.point);
  if (x.dim() != q.n()) {
    throw Error(ErrorKind::parse, "point has " + std::to_string(x.dim()) +
                                      " coordinates but the quadric has n = " +
                                      std::to_string(q.n()));
  }
  const auto cps = proof_checkpoints(q, x);
  out << "quadric: " << opts.q_path << " (n = " << q.n() << ")\n";
  out << "point: " << format_point(x) << "\n";
  out << "checkpoints:\n";
  print_checkpoints(out, cps);
  const bool all_agree =
      std::all_of(cps.begin(), cps.end(), [](const auto& cp) { return !cp.defined || cp.agrees; });
  out << "result: " << (all_agree ? "all defined checkpoints agree" : "disagreement") << "\n";
  return all_agree ? kExitOk : kExitFailed;
}

template <class R>
R dispatch_mode(ScalarKind mode, auto&& exact, auto&& real, auto&& complex) {
  switch (mode) {
    case ScalarKind::exact: return exact();
    case ScalarKind::real: return real();
    case ScalarKind::complex: return complex();
  }
  return R{};
}

// Guards every command body: parse and I/O problems become exit 64.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::parse || e.kind() == ErrorKind::dimension ? kExitUsage
                                                                             : kExitFailed;
  }
}

}  // namespace

std::size_t worker_count() {
  const char* env = std::getenv("QUADHESS_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) {
      throw Error(ErrorKind::parse, "QUADHESS_THREADS must be a positive integer");
    }
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    return dispatch_mode<int>(
        opts.mode, [&] { return verify_as<Rational>(opts, out); },
        [&] { return verify_as<Real>(opts, out); }, [&] { return verify_as<Complex>(opts, out); });
  });
}

int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.n < 1) throw Error(ErrorKind::parse, "--n must be at least 1");
    return dispatch_mode<int>(
        opts.mode, [&] { return sample_as<Rational>(opts, out); },
        [&] { return sample_as<Real>(opts, out); }, [&] { return sample_as<Complex>(opts, out); });
  });
}

int cmd_checkpoints(const CheckpointsOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.mode != ScalarKind::exact) {
      throw Error(ErrorKind::parse, "checkpoints runs in exact mode only");
    }
    return checkpoints_as<Rational>(opts, out);
  });
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.n_list.empty()) throw Error(ErrorKind::parse, "--n-list needs at least one entry");
    if (opts.reps == 0) throw Error(ErrorKind::parse, "--reps must be positive");

    struct Row {
      std::size_t n;
      const char* method;
      double mean_ns;
      double discrepancy;
    };
    std::vector<Row> rows;
    volatile double sink = 0.0;
    using Clock = std::chrono::steady_clock;

    for (std::size_t n : opts.n_list) {
      if (n < 1) throw Error(ErrorKind::parse, "--n-list entries must be at least 1");
      const std::uint64_t n_seed = derive_seed(opts.seed, n);
      GenConfig cfg = well_conditioned_config(n, n_seed);

      double closed_ns = 0.0;
      double fd_ns = 0.0;
      double worst = 0.0;
      std::size_t samples = 0;
      for (std::size_t r = 0; r < opts.reps; ++r) {
        cfg.seed = derive_seed(n_seed, r);
        const Instance<Rational> exact = random_quadric(cfg);
        const QuadricSurface<Real> q = convert<Real>(exact.q);
        const ColVector<Real> x = convert<Real>(exact.x);
        const BlockParts<Real> parts = decompose(q);
        const DiscriminantData<Real> dd = discriminant_data(parts);

        const auto t0 = Clock::now();
        const Real closed = lhs_float(parts, dd, x, BranchSign::plus);
        const auto t1 = Clock::now();
        const Matrix<Real> fd = fd_hessian(parts, x, BranchSign::plus);
        const Real via_fd =
            determinant(Real(-1) * fd) * discriminant_power(discriminant_value(dd, x), n);
        const auto t2 = Clock::now();
        sink = sink + closed + via_fd;

        closed_ns += std::chrono::duration<double, std::nano>(t1 - t0).count();
        fd_ns += std::chrono::duration<double, std::nano>(t2 - t1).count();
        worst = std::max(worst, max_abs(fd - hessian_y(parts, dd, x, BranchSign::plus)));
        ++samples;
      }
      rows.push_back({n, "closed_form", closed_ns / samples, worst});
      rows.push_back({n, "finite_difference", fd_ns / samples, worst});
    }

    std::ostringstream csv;
    csv << "n,method,mean_ns,max_abs_discrepancy\n";
    for (const Row& row : rows) {
      char line[160];
      std::snprintf(line, sizeof line, "%zu,%s,%.1f,%.3e\n", row.n, row.method, row.mean_ns,
                    row.discrepancy);
      csv << line;
    }
    out << csv.str();
    for (std::size_t n : opts.n_list) {
      out << "root_evaluations n=" << n << " closed_form=1 finite_difference="
          << fd_hessian_root_evaluations(n) << "\n";
    }
    if (opts.csv_path) write_text_file(*opts.csv_path, csv.str());
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hessian-determinant identity toolkit for quadric graph functions", "quadhess"};
  app.require_subcommand(1);

  std::string branch_text = "plus";
  std::string mode_text = "exact";
  const auto branch_check = CLI::IsMember({"plus", "minus"});
  const auto mode_check = CLI::IsMember({"exact", "float", "complex"});

  VerifyOptions verify;
  std::string verify_json;
  auto* verify_cmd = app.add_subcommand("verify", "Verify the identity at one point");
  verify_cmd->add_option("--q", verify.q_path, "Quadric JSON file")->required();
  verify_cmd->add_option("--point", verify.point, "Comma-separated coordinates")->required();
  verify_cmd->add_option("--branch", branch_text, "plus|minus")->check(branch_check);
  verify_cmd->add_option("--mode", mode_text, "exact|float|complex")->check(mode_check);
  verify_cmd->add_option("--tol", verify.tol, "Float/complex relative tolerance")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--json", verify_json, "Write a JSON report here");

  SampleOptions sample;
  std::string sample_json;
  auto* sample_cmd = app.add_subcommand("sample", "Randomized verification sweep");
  sample_cmd->add_option("--n", sample.n, "Graph dimension")->required();
  sample_cmd->add_option("--trials", sample.trials, "Number of random instances")->required();
  sample_cmd->add_option("--seed", sample.seed, "Base seed")->required();
  sample_cmd->add_option("--mode", mode_text, "exact|float|complex")->check(mode_check);
  sample_cmd->add_option("--tol", sample.tol, "Float/complex relative tolerance")
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--json", sample_json, "Write a JSON report here");

  BenchOptions bench;
  std::string bench_csv;
  auto* bench_cmd = app.add_subcommand("bench", "Closed-form vs finite-difference timing");
  bench_cmd->add_option("--n-list", bench.n_list, "Comma-separated dimensions")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps, "Instances per dimension");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--csv", bench_csv, "Write CSV here");

  CheckpointsOptions checkpoints;
  auto* checkpoints_cmd = app.add_subcommand("checkpoints", "Print intermediate quantities");
  checkpoints_cmd->add_option("--q", checkpoints.q_path, "Quadric JSON file")->required();
  checkpoints_cmd->add_option("--point", checkpoints.point, "Comma-separated coordinates")
      ->required();
  checkpoints_cmd->add_option("--mode", mode_text, "exact")->check(mode_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const ScalarKind mode = parse_mode(mode_text);
    if (verify_cmd->parsed()) {
      verify.branch = branch_text == "plus" ? BranchSign::plus : BranchSign::minus;
      verify.mode = mode;
      if (!verify_json.empty()) verify.json_path = verify_json;
      return cmd_verify(verify, out, err);
    }
    if (sample_cmd->parsed()) {
      sample.mode = mode;
      if (!sample_json.empty()) sample.json_path = sample_json;
      return cmd_sample(sample, out, err);
    }
    if (bench_cmd->parsed()) {
      if (!bench_csv.empty()) bench.csv_path = bench_csv;
      return cmd_bench(bench, out, err);
    }
    checkpoints.mode = mode;
    return cmd_checkpoints(checkpoints, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace quadhess::cli
